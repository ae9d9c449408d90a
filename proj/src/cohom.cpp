#include "blockcalc/cohom.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "blockcalc/errors.hpp"
#include "blockcalc/snf.hpp"

namespace blockcalc::cohom {

using cyclo::CyclotomicElement;
using cyclo::RootOfUnity;

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> t) {
  int n = static_cast<int>(t.size());
  if (n == 0) throw CocycleInvalid("empty group table");
  for (const auto& row : t)
    if (static_cast<int>(row.size()) != n) throw CocycleInvalid("group table not square");
  for (const auto& row : t)
    for (int v : row)
      if (v < 0 || v >= n) throw CocycleInvalid("group table entry out of range");
  for (int a = 0; a < n; ++a)
    if (t[0][a] != a || t[a][0] != a) throw CocycleInvalid("element 0 is not the identity");
  for (int a = 0; a < n; ++a) {
    bool has_inv = false;
    for (int b = 0; b < n; ++b)
      if (t[a][b] == 0 && t[b][a] == 0) has_inv = true;
    if (!has_inv) throw CocycleInvalid("element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        if (t[t[a][b]][cc] != t[a][t[b][cc]]) throw CocycleInvalid("group table not associative");
  FiniteGroup g;
  g.order = n;
  g.table = std::move(t);
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  FiniteGroup g;
  g.order = n;
  g.table = std::move(t);
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  int n = g.order * h.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < h.order; ++b)
      for (int a2 = 0; a2 < g.order; ++a2)
        for (int b2 = 0; b2 < h.order; ++b2)
          t[a * h.order + b][a2 * h.order + b2] = g.table[a][a2] * h.order + h.table[b][b2];
  FiniteGroup p;
  p.order = n;
  p.table = std::move(t);
  return p;
}

int FiniteGroup::inv(int a) const {
  for (int b = 0; b < order; ++b)
    if (table[a][b] == 0) return b;
  throw CocycleInvalid("element without inverse");
}

MultiplicativeValue mv_one(const CoefficientBasis& basis) {
  return MultiplicativeValue{0, std::vector<long>(basis.elements.size(), 0)};
}

MultiplicativeValue mv_mul(const CoefficientBasis& basis, const MultiplicativeValue& a,
                           const MultiplicativeValue& b) {
  MultiplicativeValue r;
  r.torsion = (a.torsion + b.torsion) % basis.torsion_conductor;
  r.exponents.resize(a.exponents.size());
  for (size_t i = 0; i < a.exponents.size(); ++i) r.exponents[i] = a.exponents[i] + b.exponents[i];
  return r;
}

MultiplicativeValue mv_inv(const CoefficientBasis& basis, const MultiplicativeValue& a) {
  MultiplicativeValue r;
  r.torsion = (basis.torsion_conductor - a.torsion % basis.torsion_conductor) % basis.torsion_conductor;
  r.exponents.resize(a.exponents.size());
  for (size_t i = 0; i < a.exponents.size(); ++i) r.exponents[i] = -a.exponents[i];
  return r;
}

MultiplicativeValue mv_pow(const CoefficientBasis& basis, const MultiplicativeValue& a, long e) {
  MultiplicativeValue r;
  long w = basis.torsion_conductor;
  r.torsion = ((a.torsion * e) % w + w) % w;
  r.exponents.resize(a.exponents.size());
  for (size_t i = 0; i < a.exponents.size(); ++i) r.exponents[i] = a.exponents[i] * e;
  return r;
}

namespace {

Rat rat_pow(const Rat& b, long e) {
  Rat r(1);
  Rat base = e < 0 ? Rat(1) / b : b;
  long n = e < 0 ? -e : e;
  for (; n > 0; --n) r *= base;
  return r;
}

Rat free_part(const CoefficientBasis& basis, const MultiplicativeValue& a) {
  Rat r(1);
  for (size_t i = 0; i < a.exponents.size(); ++i) r *= rat_pow(basis.elements[i], a.exponents[i]);
  return r;
}

}  // namespace

CyclotomicElement mv_to_cyclotomic(const CoefficientBasis& basis, const MultiplicativeValue& a) {
  CyclotomicElement z = cyclo::zeta(basis.torsion_conductor, a.torsion);
  return cyclo::mul(z, cyclo::from_rational(free_part(basis, a)));
}

Rat mv_to_rational(const CoefficientBasis& basis, const MultiplicativeValue& a) {
  long w = basis.torsion_conductor;
  long t = ((a.torsion % w) + w) % w;
  Rat sign(1);
  if (t != 0) {
    if (2 * t != w) throw CoefficientBasisTooSmall("torsion part is not rational");
    sign = -1;
  }
  return sign * free_part(basis, a);
}

MultiplicativeValue mv_from_rational(const CoefficientBasis& basis, const Rat& r) {
  if (r == 0) throw CoefficientBasisTooSmall("zero is not a unit");
  MultiplicativeValue v = mv_one(basis);
  Rat rest = r;
  for (size_t i = 0; i < basis.elements.size(); ++i) {
    const Rat& b = basis.elements[i];
    if (den(b) != 1 || num(b) < 2 || !is_prime(num(b)))
      throw CoefficientBasisTooSmall("basis element " + format_rat(b) + " is not a positive prime");
    long e = valuation(rest, num(b));
    v.exponents[i] = e;
    rest /= rat_pow(b, e);
  }
  if (rest == -1) {
    long w = basis.torsion_conductor;
    if (w % 2 != 0) throw CoefficientBasisTooSmall("no sign available: odd torsion conductor");
    v.torsion = w / 2;
  } else if (rest != 1) {
    throw CoefficientBasisTooSmall("value " + format_rat(r) + " has support outside the basis");
  }
  return v;
}

CocycleVerdict is_cocycle(const Cocycle2& c) {
  const auto& g = c.group;
  const auto& basis = c.basis;
  MultiplicativeValue one = mv_one(basis);
  for (int a = 0; a < g.order; ++a) {
    if (!(c.at(0, a) == one)) return {false, 0, a, -1, "normalization c(1,tau) != 1"};
    if (!(c.at(a, 0) == one)) return {false, a, 0, -1, "normalization c(sigma,1) != 1"};
  }
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      for (int r = 0; r < g.order; ++r) {
        MultiplicativeValue lhs = mv_mul(basis, c.at(s, t), c.at(g.mul(s, t), r));
        MultiplicativeValue rhs = mv_mul(basis, c.at(s, g.mul(t, r)), c.at(t, r));
        if (!(lhs == rhs)) return {false, s, t, r, "cocycle identity fails"};
      }
  return {};
}

Cocycle2 coboundary_of(const FiniteGroup& g, const CoefficientBasis& basis,
                       const std::vector<MultiplicativeValue>& f) {
  if (static_cast<int>(f.size()) != g.order) throw CocycleInvalid("cochain size mismatch");
  if (!(f[0] == mv_one(basis))) throw CocycleInvalid("cochain not normalized: f(1) != 1");
  Cocycle2 c;
  c.group = g;
  c.basis = basis;
  c.table.assign(g.order, std::vector<MultiplicativeValue>(g.order, mv_one(basis)));
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      c.table[s][t] = mv_mul(basis, mv_mul(basis, f[s], f[t]), mv_inv(basis, f[g.mul(s, t)]));
  return c;
}

namespace {

// Coboundary matrix on 1-cochains: rows indexed by pairs (s,t), columns by
// non-identity group elements; row(s,t) reads x(s) + x(t) - x(st) with x(1)=0.
IntMat coboundary_matrix(const FiniteGroup& g) {
  int n = g.order;
  IntMat a(n * n, std::vector<Int>(std::max(1, n - 1), 0));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto& row = a[s * n + t];
      if (s != 0) row[s - 1] += 1;
      if (t != 0) row[t - 1] += 1;
      int st = g.mul(s, t);
      if (st != 0) row[st - 1] -= 1;
    }
  return a;
}

IntMat augment_with_modulus(IntMat a, long mod) {
  int rows = static_cast<int>(a.size());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) a[i].push_back(i == j ? Int(mod) : Int(0));
  }
  return a;
}

// All homomorphisms G -> Z/mod, as value vectors on elements 1..n-1, in
// lexicographic order.  Skipped (empty result) when the search space is large.
std::vector<std::vector<long>> all_homs(const FiniteGroup& g, long mod) {
  int vars = g.order - 1;
  double space = 1;
  for (int i = 0; i < vars; ++i) space *= static_cast<double>(mod);
  if (space > 65536.0) return {};
  std::vector<std::vector<long>> out;
  std::vector<long> t(g.order, 0);
  std::vector<long> idx(vars, 0);
  while (true) {
    for (int i = 0; i < vars; ++i) t[i + 1] = idx[i];
    bool hom = true;
    for (int a = 0; a < g.order && hom; ++a)
      for (int b = 0; b < g.order && hom; ++b)
        if ((t[a] + t[b]) % mod != t[g.mul(a, b)] % mod) hom = false;
    if (hom) out.push_back(std::vector<long>(t.begin() + 1, t.end()));
    int k = vars - 1;
    for (; k >= 0; --k) {
      if (++idx[k] < mod) break;
      idx[k] = 0;
    }
    if (k < 0) break;
  }
  if (out.empty()) out.push_back(std::vector<long>(vars, 0));
  return out;
}

// Lexicographically minimal representative of x + Hom(G, Z/mod), componentwise
// mod `mod`.
std::vector<long> canonicalize_mod(const FiniteGroup& g, std::vector<long> x, long mod) {
  for (auto& v : x) v = ((v % mod) + mod) % mod;
  auto homs = all_homs(g, mod);
  std::vector<long> best = x;
  for (const auto& h : homs) {
    std::vector<long> cand(x.size());
    for (size_t i = 0; i < x.size(); ++i) cand[i] = (x[i] + h[i]) % mod;
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

ClassOrder class_order(const Cocycle2& c) {
  auto verdict = is_cocycle(c);
  if (!verdict.ok) throw CocycleInvalid(verdict.reason);
  const auto& g = c.group;
  int n = g.order;
  size_t k = c.basis.elements.size();
  for (const auto& row : c.table)
    for (const auto& v : row)
      if (v.exponents.size() != k)
        throw CoefficientBasisTooSmall("cocycle value exponent width does not match basis");

  IntMat a = coboundary_matrix(g);
  SmithResult snf_free = smith_normal_form(a);
  long w = c.basis.torsion_conductor;
  SmithResult snf_tors = smith_normal_form(augment_with_modulus(a, w));

  Int m = 1;
  std::vector<std::vector<Int>> free_targets(k, std::vector<Int>(n * n, 0));
  std::vector<Int> tors_target(n * n, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      for (size_t j = 0; j < k; ++j) free_targets[j][s * n + t] = c.at(s, t).exponents[j];
      tors_target[s * n + t] = c.at(s, t).torsion;
    }
  for (size_t j = 0; j < k; ++j) {
    auto mj = least_multiple_in_image(snf_free, free_targets[j]);
    if (!mj) throw CocycleInvalid("cocycle class has infinite order in the free part");
    m = lcm(m, *mj);
  }
  {
    auto mt = least_multiple_in_image(snf_tors, tors_target);
    if (!mt) throw CocycleInvalid("cocycle class has infinite order in the torsion part");
    m = lcm(m, *mt);
  }
  long ml = static_cast<long>(m);

  // Witness d with c^m = coboundary(d).  Free part solutions are unique
  // (Hom(G, Z) = 0 for finite G); the torsion part is canonicalized over
  // Hom(G, Z/W).
  std::vector<MultiplicativeValue> d(n, mv_one(c.basis));
  for (size_t j = 0; j < k; ++j) {
    std::vector<Int> b = free_targets[j];
    for (auto& v : b) v *= m;
    auto x = solve_integer(snf_free, b);
    if (!x) throw CocycleInvalid("internal: m*c not a coboundary in the free part");
    for (int e = 1; e < n; ++e) d[e].exponents[j] = static_cast<long>((*x)[e - 1]);
  }
  {
    std::vector<Int> b = tors_target;
    for (auto& v : b) v *= m;
    auto x = solve_integer(snf_tors, b);
    if (!x) throw CocycleInvalid("internal: m*c not a coboundary in the torsion part");
    std::vector<long> t(n - 1);
    for (int e = 1; e < n; ++e) t[e - 1] = static_cast<long>((*x)[e - 1]);
    t = canonicalize_mod(g, std::move(t), w);
    for (int e = 1; e < n; ++e) d[e].torsion = t[e - 1];
  }
  return ClassOrder{ml, std::move(d)};
}

CyclotomicElement coboundary_value(const SplittingMap& beta, int s, int t) {
  return cyclo::mul(cyclo::mul(beta.values[s], beta.values[t]),
                    cyclo::inverse(beta.values[beta.group.mul(s, t)]));
}

bool splits_cocycle(const SplittingMap& beta, const Cocycle2& c) {
  for (int s = 0; s < c.group.order; ++s)
    for (int t = 0; t < c.group.order; ++t)
      if (!cyclo::eq(coboundary_value(beta, s, t), mv_to_cyclotomic(c.basis, c.at(s, t))))
        return false;
  return true;
}

SplittingMap split_cocycle(const Cocycle2& c, long W) {
  auto verdict = is_cocycle(c);
  if (!verdict.ok) throw CocycleInvalid(verdict.reason);
  ClassOrder cls = class_order(c);
  if (cls.m > 2) throw UnsupportedClassOrder(static_cast<int>(cls.m));

  const auto& g = c.group;
  int n = g.order;
  long M = cyclo::lcm_long(2, W);  // roots of unity available in Q(zeta_W)

  std::vector<CyclotomicElement> s_vals(n);
  long amb = M;
  if (cls.m == 1) {
    for (int e = 0; e < n; ++e) {
      s_vals[e] = mv_to_cyclotomic(c.basis, cls.witness[e]);
      amb = cyclo::lcm_long(amb, s_vals[e].conductor);
    }
  } else {
    // Square roots of the witness values.
    long w0 = c.basis.torsion_conductor;
    for (int e = 0; e < n; ++e) {
      const auto& dv = cls.witness[e];
      Rat fp = free_part(c.basis, dv);
      Rat sign(1);
      long tors_half = 0;
      if (dv.torsion != 0) {
        if (2 * dv.torsion == w0) {
          sign = -1;  // sqrt handled by sqrt_as_cyclotomic on the signed rational
        } else {
          tors_half = dv.torsion;  // sqrt(zeta_w0^t) = zeta_{2 w0}^t
        }
      }
      auto [cond, root] = cyclo::sqrt_as_cyclotomic(sign * fp);
      if (tors_half != 0) {
        root = cyclo::mul(root, cyclo::zeta(2 * w0, tors_half));
        cond = cyclo::lcm_long(cond, 2 * w0);
      }
      if (!cyclo::lies_in_conductor(root, W))
        throw InsufficientCoefficients("sqrt of witness value is not in Q(zeta_" + std::to_string(W) +
                                       ")");
      s_vals[e] = root;
      amb = cyclo::lcm_long(amb, cond);
    }
  }
  for (auto& v : s_vals) v = cyclo::embed(v, amb);

  // s is a splitting map only up to a sign cocycle eta; fix it with a map
  // into mu_M: beta = zeta_M^k * s with dk = -e (mod M), eta = zeta_M^e.
  std::vector<Int> target(n * n, 0);
  CyclotomicElement minus_one = cyclo::from_rational(Rat(-1));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      CyclotomicElement ds = cyclo::mul(cyclo::mul(s_vals[s], s_vals[t]),
                                        cyclo::inverse(s_vals[g.mul(s, t)]));
      CyclotomicElement eta = cyclo::mul(ds, cyclo::inverse(mv_to_cyclotomic(c.basis, c.at(s, t))));
      if (cyclo::eq(eta, cyclo::from_rational(Rat(1)))) {
        target[s * n + t] = 0;
      } else if (cyclo::eq(eta, minus_one)) {
        target[s * n + t] = -(M / 2);
      } else {
        throw CocycleInvalid("internal: correction cocycle is not +-1");
      }
    }

  std::vector<long> kvec(n, 0);
  bool nontrivial = std::any_of(target.begin(), target.end(), [](const Int& v) { return v != 0; });
  if (nontrivial) {
    SmithResult snf_aug = smith_normal_form(augment_with_modulus(coboundary_matrix(g), M));
    auto x = solve_integer(snf_aug, target);
    if (!x)
      throw InsufficientCoefficients("cocycle does not split over Q(zeta_" + std::to_string(W) + ")");
    std::vector<long> k0(n - 1);
    for (int e = 1; e < n; ++e) k0[e - 1] = static_cast<long>((*x)[e - 1]);
    k0 = canonicalize_mod(g, std::move(k0), M);
    for (int e = 1; e < n; ++e) kvec[e] = k0[e - 1];
  }

  SplittingMap beta;
  beta.group = g;
  beta.conductor = amb;
  beta.values.resize(n);
  for (int e = 0; e < n; ++e)
    beta.values[e] = cyclo::embed(cyclo::mul(cyclo::zeta(M, kvec[e]), s_vals[e]), amb);
  if (!splits_cocycle(beta, c)) throw CocycleInvalid("internal: coboundary of beta differs from c");
  return beta;
}

long CharacterMap::order() const {
  long o = 1;
  for (const auto& v : values) o = cyclo::lcm_long(o, v.order());
  return o;
}

CharacterMap epsilon_character(const SplittingMap& beta, long m,
                               const std::vector<MultiplicativeValue>& d,
                               const CoefficientBasis& basis) {
  const auto& g = beta.group;
  if (static_cast<int>(d.size()) != g.order) throw NotACharacter("witness size mismatch");
  CharacterMap eps;
  eps.group = g;
  eps.values.resize(g.order);
  for (int s = 0; s < g.order; ++s) {
    CyclotomicElement v = cyclo::mul(cyclo::pow(beta.values[s], m),
                                     cyclo::inverse(mv_to_cyclotomic(basis, d[s])));
    auto r = cyclo::as_root_of_unity(v);
    if (!r) throw NotACharacter("beta^m/d is not a root of unity at element " + std::to_string(s));
    eps.values[s] = *r;
  }
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      if (!(eps.values[g.mul(s, t)] == cyclo::ru_mul(eps.values[s], eps.values[t])))
        throw NotACharacter("homomorphism law fails at pair (" + std::to_string(s) + "," +
                            std::to_string(t) + ")");
  return eps;
}

namespace {

// zeta_n generated by the values of beta, checked through the fixing subgroup.
bool contains_zeta(const SplittingMap& beta, long n) {
  if (n <= 2) return true;  // +-1 are rational
  long cond = cyclo::lcm_long(beta.conductor, n);
  auto info = cyclo::generated_subfield(beta.values, cond);
  CyclotomicElement zn = cyclo::embed(cyclo::zeta(n), cond);
  for (long a : info.fixing_subgroup)
    if (!cyclo::eq(cyclo::galois_act(a, zn), zn)) return false;
  return true;
}

}  // namespace

AdjustedSplitting adjust_splitting_map(const SplittingMap& beta_prime, const Cocycle2& c, long n,
                                       long m, const std::vector<MultiplicativeValue>& d) {
  CharacterMap eps_prime = epsilon_character(beta_prime, m, d, c.basis);
  long r = eps_prime.order();

  AdjustedSplitting out;
  if (n <= 1 || r % n == 0) {
    // zeta_n already lies in E_beta via the order of epsilon.
    out.beta = beta_prime;
    out.inflated = c;
    out.d_inflated = d;
    out.chi_order = 1;
    out.epsilon = std::move(eps_prime);
    out.extended = false;
    return out;
  }

  long e = std::gcd(n, r);
  long q = cyclo::lcm_long(m * n / e, n);

  const auto& g = c.group;
  FiniteGroup ext = FiniteGroup::direct_product(g, FiniteGroup::cyclic(static_cast<int>(q)));
  long cond = cyclo::lcm_long(beta_prime.conductor, q);

  out.beta.group = ext;
  out.beta.conductor = cond;
  out.beta.values.resize(ext.order);
  out.d_inflated.resize(ext.order);
  out.inflated.group = ext;
  out.inflated.basis = c.basis;
  out.inflated.table.assign(ext.order, std::vector<MultiplicativeValue>(ext.order, mv_one(c.basis)));
  for (int a = 0; a < g.order; ++a)
    for (long j = 0; j < q; ++j) {
      int idx = a * static_cast<int>(q) + static_cast<int>(j);
      out.beta.values[idx] =
          cyclo::embed(cyclo::mul(cyclo::zeta(q, j), beta_prime.values[a]), cond);
      out.d_inflated[idx] = d[a];
    }
  for (int i = 0; i < ext.order; ++i)
    for (int j = 0; j < ext.order; ++j)
      out.inflated.table[i][j] = c.at(i / static_cast<int>(q), j / static_cast<int>(q));

  out.chi_order = q;
  out.epsilon = epsilon_character(out.beta, m, out.d_inflated, c.basis);
  out.extended = true;
  if (!splits_cocycle(out.beta, out.inflated))
    throw CocycleInvalid("internal: adjusted beta does not split the inflated cocycle");
  if (!contains_zeta(out.beta, n))
    throw Error("adjust_splitting_map postcondition failed: zeta_" + std::to_string(n) +
                " not in E_beta");
  return out;
}

cyclo::SubfieldInfo splitting_field_of(const SplittingMap& beta) {
  return cyclo::generated_subfield(beta.values, beta.conductor);
}

}  // namespace blockcalc::cohom
