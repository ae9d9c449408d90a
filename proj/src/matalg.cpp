#include "blockcalc/matalg.hpp"

#include <algorithm>

#include "blockcalc/errors.hpp"

namespace blockcalc::matalg {

QuaternionElement q_from_rat(const Rat& r) { return {r, Rat(0), Rat(0), Rat(0)}; }

QuaternionElement q_add(const QuaternionElement& p, const QuaternionElement& q) {
  return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}

QuaternionElement q_sub(const QuaternionElement& p, const QuaternionElement& q) {
  return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
}

QuaternionElement q_mul(const Ambient& amb, const QuaternionElement& p,
                        const QuaternionElement& q) {
  const Rat &a = amb.a, &b = amb.b;
  return {p.w * q.w + a * p.x * q.x + b * p.y * q.y - a * b * p.z * q.z,
          p.w * q.x + p.x * q.w - b * p.y * q.z + b * p.z * q.y,
          p.w * q.y + p.y * q.w + a * p.x * q.z - a * p.z * q.x,
          p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x};
}

Rat reduced_norm(const Ambient& amb, const QuaternionElement& q) {
  return q.w * q.w - amb.a * q.x * q.x - amb.b * q.y * q.y + amb.a * amb.b * q.z * q.z;
}

MatrixOverB mat_zero(long n) {
  MatrixOverB m;
  m.n = n;
  m.e.assign(n, std::vector<QuaternionElement>(n));
  return m;
}

MatrixOverB mat_identity(long n) { return mat_scalar(n, q_from_rat(Rat(1))); }

MatrixOverB mat_scalar(long n, const QuaternionElement& q) {
  MatrixOverB m = mat_zero(n);
  for (long i = 0; i < n; ++i) m.e[i][i] = q;
  return m;
}

MatrixOverB mat_add(const MatrixOverB& p, const MatrixOverB& q) {
  MatrixOverB m = mat_zero(p.n);
  for (long i = 0; i < p.n; ++i)
    for (long j = 0; j < p.n; ++j) m.e[i][j] = q_add(p.e[i][j], q.e[i][j]);
  return m;
}

MatrixOverB mat_sub(const MatrixOverB& p, const MatrixOverB& q) {
  MatrixOverB m = mat_zero(p.n);
  for (long i = 0; i < p.n; ++i)
    for (long j = 0; j < p.n; ++j) m.e[i][j] = q_sub(p.e[i][j], q.e[i][j]);
  return m;
}

MatrixOverB mat_mul(const Ambient& amb, const MatrixOverB& p, const MatrixOverB& q) {
  MatrixOverB m = mat_zero(p.n);
  for (long i = 0; i < p.n; ++i)
    for (long j = 0; j < p.n; ++j)
      for (long k = 0; k < p.n; ++k)
        m.e[i][j] = q_add(m.e[i][j], q_mul(amb, p.e[i][k], q.e[k][j]));
  return m;
}

MatrixOverB mat_scale(const Rat& c, const MatrixOverB& m) {
  MatrixOverB r = m;
  for (auto& row : r.e)
    for (auto& q : row) q = {c * q.w, c * q.x, c * q.y, c * q.z};
  return r;
}

std::vector<Rat> flatten(const Ambient& amb, const MatrixOverB& m) {
  if (m.n != amb.n) throw DegreeMismatch("matrix size does not match the ambient algebra");
  int t2 = amb.t() * amb.t();
  std::vector<Rat> v(amb.dim(), Rat(0));
  for (long i = 0; i < amb.n; ++i)
    for (long j = 0; j < amb.n; ++j) {
      const QuaternionElement& q = m.e[i][j];
      long base = (i * amb.n + j) * t2;
      v[base] = q.w;
      if (amb.quaternionic) {
        v[base + 1] = q.x;
        v[base + 2] = q.y;
        v[base + 3] = q.z;
      } else if (q.x != 0 || q.y != 0 || q.z != 0) {
        throw DegreeMismatch("quaternion entry in a matrix over Q");
      }
    }
  return v;
}

MatrixOverB unflatten(const Ambient& amb, const std::vector<Rat>& v) {
  int t2 = amb.t() * amb.t();
  MatrixOverB m = mat_zero(amb.n);
  for (long i = 0; i < amb.n; ++i)
    for (long j = 0; j < amb.n; ++j) {
      long base = (i * amb.n + j) * t2;
      m.e[i][j].w = v[base];
      if (amb.quaternionic) {
        m.e[i][j].x = v[base + 1];
        m.e[i][j].y = v[base + 2];
        m.e[i][j].z = v[base + 3];
      }
    }
  return m;
}

namespace {

// Matrix of left multiplication by m on the flattened ambient algebra.
std::vector<std::vector<Rat>> left_mult_matrix(const Ambient& amb, const MatrixOverB& m) {
  long d = amb.dim();
  std::vector<std::vector<Rat>> l(d, std::vector<Rat>(d, Rat(0)));
  for (long c = 0; c < d; ++c) {
    std::vector<Rat> e(d, Rat(0));
    e[c] = 1;
    std::vector<Rat> col = flatten(amb, mat_mul(amb, m, unflatten(amb, e)));
    for (long r = 0; r < d; ++r) l[r][c] = col[r];
  }
  return l;
}

}  // namespace

std::optional<MatrixOverB> mat_inverse(const Ambient& amb, const MatrixOverB& m) {
  auto x = solve_linear(left_mult_matrix(amb, m), flatten(amb, mat_identity(amb.n)));
  if (!x) return std::nullopt;
  MatrixOverB inv = unflatten(amb, *x);
  if (!(mat_mul(amb, m, inv) == mat_identity(amb.n))) return std::nullopt;
  if (!(mat_mul(amb, inv, m) == mat_identity(amb.n))) return std::nullopt;
  return inv;
}

bool is_invertible(const Ambient& amb, const MatrixOverB& m) {
  return rank_of(left_mult_matrix(amb, m)) == amb.dim();
}

std::vector<std::vector<Rat>> rref(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return m;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rat p = m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r, std::vector<Rat>(cols, Rat(0)));  // keep only the nonzero rows
  return m;
}

long rank_of(const std::vector<std::vector<Rat>>& m) {
  return static_cast<long>(rref(m).size());
}

std::vector<std::vector<Rat>> kernel_basis(const std::vector<std::vector<Rat>>& m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  auto r = rref(m);
  std::vector<long> pivot_of_col(cols, -1);
  for (size_t i = 0; i < r.size(); ++i) {
    size_t c = 0;
    while (c < cols && r[i][c] == 0) ++c;
    if (c < cols) pivot_of_col[c] = static_cast<long>(i);
  }
  std::vector<std::vector<Rat>> out;
  for (size_t f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -r[pivot_of_col[c]][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> m,
                                             std::vector<Rat> rhs) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  auto r = rref(std::move(m));
  std::vector<Rat> x(cols, Rat(0));
  for (const auto& row : r) {
    size_t c = 0;
    while (c < cols + 1 && row[c] == 0) ++c;
    if (c == cols) return std::nullopt;  // 0 = nonzero
    if (c > cols) continue;
    x[c] = row[cols];
  }
  return x;
}

namespace {

// Incrementally maintained span; add() returns true when v was independent.
struct Span {
  std::vector<std::vector<Rat>> rows;  // echelon, not normalized

  bool add(std::vector<Rat> v) {
    for (const auto& r : rows) {
      size_t p = 0;
      while (p < r.size() && r[p] == 0) ++p;
      if (p < v.size() && v[p] != 0) {
        Rat f = v[p] / r[p];
        for (size_t j = p; j < v.size(); ++j) v[j] -= f * r[j];
      }
    }
    if (std::all_of(v.begin(), v.end(), [](const Rat& c) { return c == 0; })) return false;
    rows.push_back(std::move(v));
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      size_t px = 0, py = 0;
      while (px < x.size() && x[px] == 0) ++px;
      while (py < y.size() && y[py] == 0) ++py;
      return px < py;
    });
    // re-echelonize after insertion
    for (size_t i = 1; i < rows.size(); ++i) {
      for (size_t k = 0; k < i; ++k) {
        size_t p = 0;
        while (p < rows[k].size() && rows[k][p] == 0) ++p;
        if (p < rows[i].size() && rows[i][p] != 0) {
          Rat f = rows[i][p] / rows[k][p];
          for (size_t j = p; j < rows[i].size(); ++j) rows[i][j] -= f * rows[k][j];
        }
      }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const auto& r) {
                                return std::all_of(r.begin(), r.end(),
                                                   [](const Rat& c) { return c == 0; });
                              }),
               rows.end());
    return true;
  }
};

}  // namespace

SubalgebraSpec make_subalgebra(const Ambient& amb, std::vector<MatrixOverB> gens) {
  SubalgebraSpec s;
  s.amb = amb;
  s.generators = gens;
  Span span;
  std::vector<MatrixOverB> basis;
  auto try_add = [&](const MatrixOverB& m) {
    if (span.add(flatten(amb, m))) basis.push_back(m);
  };
  try_add(mat_identity(amb.n));
  for (const auto& g : gens) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    size_t cur = basis.size();
    for (size_t i = 0; i < cur; ++i)
      for (size_t j = 0; j < cur; ++j) {
        size_t before = basis.size();
        try_add(mat_mul(amb, basis[i], basis[j]));
        if (basis.size() != before) grew = true;
      }
  }
  s.basis = std::move(basis);
  return s;
}

SubalgebraSpec centralizer(const SubalgebraSpec& s) {
  const Ambient& amb = s.amb;
  long d = amb.dim();
  std::vector<std::vector<Rat>> sys;
  const auto& gens = s.generators.empty() ? s.basis : s.generators;
  for (const auto& g : gens) {
    // rows of x -> xg - gx on the flattening
    std::vector<std::vector<Rat>> block(d, std::vector<Rat>(d, Rat(0)));
    for (long c = 0; c < d; ++c) {
      std::vector<Rat> e(d, Rat(0));
      e[c] = 1;
      MatrixOverB x = unflatten(amb, e);
      auto col = flatten(amb, mat_sub(mat_mul(amb, x, g), mat_mul(amb, g, x)));
      for (long r = 0; r < d; ++r) block[r][c] = col[r];
    }
    sys.insert(sys.end(), block.begin(), block.end());
  }
  SubalgebraSpec out;
  out.amb = amb;
  for (const auto& v : kernel_basis(sys)) out.basis.push_back(unflatten(amb, v));
  return out;
}

bool same_span(const SubalgebraSpec& s1, const SubalgebraSpec& s2) {
  std::vector<std::vector<Rat>> r1, r2;
  for (const auto& m : s1.basis) r1.push_back(flatten(s1.amb, m));
  for (const auto& m : s2.basis) r2.push_back(flatten(s2.amb, m));
  return rref(std::move(r1)) == rref(std::move(r2));
}

bool verify_double_centralizer(const SubalgebraSpec& s) {
  SubalgebraSpec c = centralizer(s);
  if (c.dim() * s.dim() != s.amb.dim()) return false;
  return same_span(centralizer(c), s);
}

namespace {

// Express v in the span of basis vectors; nullopt when outside.
std::optional<std::vector<Rat>> coords_in(const std::vector<std::vector<Rat>>& basis,
                                          const std::vector<Rat>& v) {
  if (basis.empty()) return std::nullopt;
  size_t d = basis[0].size(), k = basis.size();
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(k, Rat(0)));
  for (size_t c = 0; c < k; ++c)
    for (size_t r = 0; r < d; ++r) m[r][c] = basis[c][r];
  auto x = solve_linear(m, v);
  if (!x) return std::nullopt;
  // solve_linear ignores inconsistency only when detected; re-verify
  for (size_t r = 0; r < d; ++r) {
    Rat acc(0);
    for (size_t c = 0; c < k; ++c) acc += basis[c][r] * (*x)[c];
    if (acc != v[r]) return std::nullopt;
  }
  return x;
}

}  // namespace

bool is_maximal_subfield(const SubalgebraSpec& s) {
  const Ambient& amb = s.amb;
  if (s.dim() != amb.n * amb.t()) return false;
  for (const auto& p : s.basis)
    for (const auto& q : s.basis)
      if (!(mat_mul(amb, p, q) == mat_mul(amb, q, p))) return false;
  // sampled field check: multiplication by a nonzero element is invertible
  std::vector<std::vector<Rat>> fb;
  for (const auto& m : s.basis) fb.push_back(flatten(amb, m));
  unsigned long seed = 0x2545F491;
  long k = s.dim();
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rat> coef(k);
    bool nonzero = false;
    for (long i = 0; i < k; ++i) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      long c = static_cast<long>((seed >> 33) % 7) - 3;
      coef[i] = c;
      nonzero |= c != 0;
    }
    if (!nonzero) continue;
    MatrixOverB u = mat_zero(amb.n);
    for (long i = 0; i < k; ++i) u = mat_add(u, mat_scale(coef[i], s.basis[i]));
    std::vector<std::vector<Rat>> op;
    for (long j = 0; j < k; ++j) {
      auto prod = flatten(amb, mat_mul(amb, u, s.basis[j]));
      auto x = coords_in(fb, prod);
      if (!x) return false;  // not closed: not an algebra span
      op.push_back(std::move(*x));
    }
    if (rank_of(op) != k) return false;  // zero divisor found
  }
  return true;
}

MatrixOverB companion_embedding(const std::vector<Rat>& minpoly, long n) {
  if (static_cast<long>(minpoly.size()) != n + 1 || minpoly.back() != 1)
    throw DegreeMismatch("companion embedding needs a monic polynomial of degree n");
  if (n >= 2 && n <= 3) {
    // rational root screen: clear denominators, test p/q over divisor pairs
    Int lead = 1;
    for (const auto& c : minpoly) lead = lead * den(c) / boost::multiprecision::gcd(lead, den(c));
    std::vector<Int> z;
    for (const auto& c : minpoly) z.push_back(num(c * Rat(lead)));
    auto divisors = [](Int v) {
      std::vector<Int> out{1};
      if (v == 0) return out;
      if (v < 0) v = -v;
      for (Int d = 1; d * d <= v; ++d)
        if (v % d == 0) {
          out.push_back(d);
          out.push_back(v / d);
        }
      return out;
    };
    if (z[0] == 0) throw std::invalid_argument("polynomial has the rational root 0");
    for (const Int& p : divisors(z[0]))
      for (const Int& q : divisors(z.back()))
        for (int sg : {1, -1}) {
          Rat r(p * sg, q);
          Rat val(0), pw(1);
          for (const auto& c : minpoly) {
            val += c * pw;
            pw *= r;
          }
          if (val == 0) throw std::invalid_argument("polynomial has a rational root");
        }
  }
  MatrixOverB m = mat_zero(n);
  for (long i = 0; i + 1 < n; ++i) m.e[i + 1][i] = q_from_rat(Rat(1));
  for (long i = 0; i < n; ++i) m.e[i][n - 1] = q_from_rat(-minpoly[i]);
  return m;
}

MatrixOverB skolem_noether_conjugator(const Ambient& amb, const MatrixOverB& phi,
                                      const MatrixOverB& psi) {
  long d = amb.dim();
  std::vector<std::vector<Rat>> sys(d, std::vector<Rat>(d, Rat(0)));
  for (long c = 0; c < d; ++c) {
    std::vector<Rat> e(d, Rat(0));
    e[c] = 1;
    MatrixOverB b = unflatten(amb, e);
    auto col = flatten(amb, mat_sub(mat_mul(amb, b, psi), mat_mul(amb, phi, b)));
    for (long r = 0; r < d; ++r) sys[r][c] = col[r];
  }
  auto ker = kernel_basis(sys);
  long k = static_cast<long>(ker.size());
  auto candidate = [&](const std::vector<long>& coef) -> std::optional<MatrixOverB> {
    std::vector<Rat> v(d, Rat(0));
    for (long i = 0; i < k; ++i)
      for (long r = 0; r < d; ++r) v[r] += Rat(coef[i]) * ker[i][r];
    MatrixOverB b = unflatten(amb, v);
    auto inv = mat_inverse(amb, b);
    if (!inv) return std::nullopt;
    if (!(mat_mul(amb, mat_mul(amb, b, psi), *inv) == phi)) return std::nullopt;
    return b;
  };
  // single basis vectors first, then small combinations
  for (long i = 0; i < k; ++i) {
    std::vector<long> coef(k, 0);
    coef[i] = 1;
    if (auto b = candidate(coef)) return *b;
  }
  if (k > 0 && k <= 4) {
    std::vector<long> coef(k, -2);
    while (true) {
      if (std::any_of(coef.begin(), coef.end(), [](long c) { return c != 0; }))
        if (auto b = candidate(coef)) return *b;
      long i = k - 1;
      for (; i >= 0; --i) {
        if (++coef[i] <= 2) break;
        coef[i] = -2;
      }
      if (i < 0) break;
    }
  } else if (k > 4) {
    unsigned long seed = 0x9E3779B9;
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<long> coef(k);
      for (long i = 0; i < k; ++i) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        coef[i] = static_cast<long>((seed >> 33) % 5) - 2;
      }
      if (std::all_of(coef.begin(), coef.end(), [](long c) { return c == 0; })) continue;
      if (auto b = candidate(coef)) return *b;
    }
  }
  throw NoConjugatorFound("no invertible element in the intertwiner space within bounds");
}

bool descent_cocycle_check(const cohom::Cocycle2& c, const Ambient& amb,
                           const std::map<int, MatrixOverB>& phi) {
  int g = c.group.order;
  for (int s = 0; s < g; ++s)
    if (!phi.count(s)) throw EmbeddingIncomplete("no matrix image for group element");
  for (int s = 0; s < g; ++s)
    for (int t = 0; t < g; ++t) {
      Rat scal = cohom::mv_to_rational(c.basis, c.at(s, t));
      MatrixOverB lhs = mat_mul(amb, phi.at(s), phi.at(t));
      MatrixOverB rhs = mat_scale(scal, phi.at(c.group.mul(s, t)));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

}  // namespace blockcalc::matalg
