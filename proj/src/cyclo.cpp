#include "blockcalc/cyclo.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "blockcalc/errors.hpp"

namespace blockcalc::cyclo {

namespace {

using Poly = std::vector<Rat>;  // dense, constant term first

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Remainder of a modulo monic divisor d.
Poly poly_rem(Poly a, const Poly& d) {
  assert(d.back() == 1);
  long deg_d = static_cast<long>(d.size()) - 1;
  while (!a.empty() && static_cast<long>(a.size()) - 1 >= deg_d && !(a.size() == 1 && a[0] == 0)) {
    long shift = static_cast<long>(a.size()) - 1 - deg_d;
    Rat lead = a.back();
    if (lead != 0) {
      for (long i = 0; i <= deg_d; ++i) a[shift + i] -= lead * d[i];
    }
    a.pop_back();
  }
  trim(a);
  return a;
}

// Exact quotient, divisor monic, division known exact.
Poly poly_div_exact(Poly a, const Poly& d) {
  long deg_d = static_cast<long>(d.size()) - 1;
  long deg_q = static_cast<long>(a.size()) - 1 - deg_d;
  Poly q(deg_q + 1, Rat(0));
  for (long k = deg_q; k >= 0; --k) {
    Rat lead = a[k + deg_d];
    q[k] = lead;
    if (lead != 0)
      for (long i = 0; i <= deg_d; ++i) a[k + i] -= lead * d[i];
  }
  return q;
}

// Extended Euclid: returns (g, u) with u*a = g mod m, g the monic gcd.
std::pair<Poly, Poly> poly_half_xgcd(Poly a, Poly m) {
  Poly u0{Rat(1)}, u1{Rat(0)};
  Poly r0 = std::move(a), r1 = std::move(m);
  trim(r0);
  trim(r1);
  while (!(r1.size() == 1 && r1[0] == 0)) {
    // Divide r0 by r1.
    Poly q(std::max<long>(1, static_cast<long>(r0.size()) - static_cast<long>(r1.size()) + 1), Rat(0));
    Poly rem = r0;
    long deg1 = static_cast<long>(r1.size()) - 1;
    Rat inv_lead = Rat(1) / r1.back();
    while (static_cast<long>(rem.size()) - 1 >= deg1 && !(rem.size() == 1 && rem[0] == 0)) {
      long shift = static_cast<long>(rem.size()) - 1 - deg1;
      Rat c = rem.back() * inv_lead;
      q[shift] = c;
      for (long i = 0; i <= deg1; ++i) rem[shift + i] -= c * r1[i];
      rem.pop_back();
      if (rem.empty()) rem.assign(1, Rat(0));
      trim(rem);
    }
    trim(q);
    // u0 - q*u1
    Poly qu = poly_mul(q, u1);
    Poly u2 = u0;
    if (u2.size() < qu.size()) u2.resize(qu.size(), Rat(0));
    for (size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
    trim(u2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  // Normalize gcd monic.
  Rat lead = r0.back();
  for (auto& c : r0) c /= lead;
  for (auto& c : u0) c /= lead;
  return {r0, u0};
}

}  // namespace

long phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

const std::vector<Rat>& cyclotomic_polynomial(long n) {
  static std::map<long, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // (x^n - 1) / prod_{d | n, d < n} Phi_d
  Poly p(n + 1, Rat(0));
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_div_exact(std::move(p), cyclotomic_polynomial(d));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

bool CyclotomicElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

bool CyclotomicElement::is_rational() const {
  for (size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return false;
  return true;
}

Rat CyclotomicElement::rational_part() const { return coeffs[0]; }

CyclotomicElement reduce_mod_cyclotomic(std::vector<Rat> raw, long N) {
  if (N < 1) throw std::invalid_argument("conductor must be >= 1");
  const Poly& phi_n = cyclotomic_polynomial(N);
  Poly r = poly_rem(std::move(raw), phi_n);
  r.resize(phi_n.size() - 1, Rat(0));
  if (r.empty()) r.assign(1, Rat(0));
  return CyclotomicElement{N, std::move(r)};
}

CyclotomicElement from_rational(const Rat& r, long N) {
  std::vector<Rat> c(std::max<long>(1, phi(N)), Rat(0));
  c[0] = r;
  return CyclotomicElement{N, std::move(c)};
}

CyclotomicElement zeta(long N, long exponent) {
  exponent %= N;
  if (exponent < 0) exponent += N;
  std::vector<Rat> raw(exponent + 1, Rat(0));
  raw[exponent] = 1;
  return reduce_mod_cyclotomic(std::move(raw), N);
}

CyclotomicElement embed(const CyclotomicElement& x, long M) {
  if (M % x.conductor != 0) throw std::invalid_argument("embed: conductor does not divide target");
  if (M == x.conductor) return x;
  long k = M / x.conductor;
  std::vector<Rat> raw(static_cast<size_t>(x.coeffs.size() - 1) * k + 1, Rat(0));
  for (size_t i = 0; i < x.coeffs.size(); ++i) raw[i * k] = x.coeffs[i];
  return reduce_mod_cyclotomic(std::move(raw), M);
}

bool eq(const CyclotomicElement& a, const CyclotomicElement& b) {
  long L = lcm_long(a.conductor, b.conductor);
  return embed(a, L).coeffs == embed(b, L).coeffs;
}

CyclotomicElement add(const CyclotomicElement& a, const CyclotomicElement& b) {
  long L = lcm_long(a.conductor, b.conductor);
  CyclotomicElement x = embed(a, L), y = embed(b, L);
  for (size_t i = 0; i < x.coeffs.size(); ++i) x.coeffs[i] += y.coeffs[i];
  return x;
}

CyclotomicElement sub(const CyclotomicElement& a, const CyclotomicElement& b) { return add(a, neg(b)); }

CyclotomicElement neg(const CyclotomicElement& a) {
  CyclotomicElement x = a;
  for (auto& c : x.coeffs) c = -c;
  return x;
}

CyclotomicElement mul(const CyclotomicElement& a, const CyclotomicElement& b) {
  long L = lcm_long(a.conductor, b.conductor);
  CyclotomicElement x = embed(a, L), y = embed(b, L);
  return reduce_mod_cyclotomic(poly_mul(x.coeffs, y.coeffs), L);
}

CyclotomicElement inverse(const CyclotomicElement& a) {
  if (a.is_zero()) throw DivisionByZero();
  if (a.is_rational()) return from_rational(Rat(1) / a.coeffs[0], a.conductor);
  auto [g, u] = poly_half_xgcd(a.coeffs, cyclotomic_polynomial(a.conductor));
  // Phi_N irreducible, so the gcd is 1.
  assert(g.size() == 1 && g[0] == 1);
  return reduce_mod_cyclotomic(std::move(u), a.conductor);
}

CyclotomicElement pow(const CyclotomicElement& a, long e) {
  CyclotomicElement base = e < 0 ? inverse(a) : a;
  if (e < 0) e = -e;
  CyclotomicElement r = from_rational(Rat(1), base.conductor);
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

CyclotomicElement galois_act(long a, const CyclotomicElement& x) {
  long N = x.conductor;
  a %= N;
  if (a < 0) a += N;
  if (std::gcd(a, N) != 1)
    throw InvalidAutomorphism(std::to_string(a) + " mod " + std::to_string(N));
  std::vector<Rat> raw(N, Rat(0));
  for (size_t i = 0; i < x.coeffs.size(); ++i) raw[(i * a) % N] += x.coeffs[i];
  return reduce_mod_cyclotomic(std::move(raw), N);
}

SubfieldInfo generated_subfield(const std::vector<CyclotomicElement>& values, long N) {
  std::vector<CyclotomicElement> vs;
  vs.reserve(values.size());
  for (const auto& v : values) vs.push_back(embed(v, N));
  std::vector<long> H;
  for (long a = 1; a < std::max<long>(2, N); ++a) {
    if (N > 1 && std::gcd(a, N) != 1) continue;
    bool fixes = true;
    for (const auto& v : vs) {
      if (!eq(galois_act(a, v), v)) {
        fixes = false;
        break;
      }
    }
    if (fixes) H.push_back(a);
  }
  if (N == 1) H.assign(1, 1);
  long degree = phi(N) / static_cast<long>(H.size());
  return SubfieldInfo{N, degree, std::move(H)};
}

namespace {

// Legendre symbol (a/p), p odd prime, p does not divide a.
int legendre(Int a, const Int& p) {
  Int r = pow_mod(std::move(a), (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

// Quadratic Gauss sum over Z/p; squares to p for p = 1 mod 4 and to -p for
// p = 3 mod 4.
CyclotomicElement gauss_sum(long p) {
  std::vector<Rat> raw(p, Rat(0));
  for (long a = 1; a < p; ++a) raw[a] = Rat(legendre(Int(a), Int(p)));
  return reduce_mod_cyclotomic(std::move(raw), p);
}

}  // namespace

std::pair<long, CyclotomicElement> sqrt_as_cyclotomic(const Rat& d) {
  if (d == 0) throw std::invalid_argument("sqrt_as_cyclotomic: zero");
  bool negative = d < 0;
  // d = sign * q^2 * prod of squarefree primes.
  Rat q(1);
  std::vector<long> squarefree;
  auto absorb = [&](const std::map<Int, int>& fac, bool denom) {
    for (const auto& [p, e] : fac) {
      int half = e / 2, rem = e % 2;
      for (int i = 0; i < half; ++i) q = denom ? q / Rat(p) : q * Rat(p);
      if (rem) {
        long pl = static_cast<long>(p);
        if (denom) q /= Rat(p);  // 1/p = p / p^2
        squarefree.push_back(pl);
      }
    }
  };
  absorb(factor(num(d)), false);
  absorb(factor(den(d)), true);
  std::sort(squarefree.begin(), squarefree.end());

  CyclotomicElement s = from_rational(q);
  long cond = 1;
  if (negative) {
    s = mul(s, zeta(4));
    cond = lcm_long(cond, 4);
  }
  for (long p : squarefree) {
    CyclotomicElement sp;
    long cp;
    if (p == 2) {
      sp = add(zeta(8, 1), zeta(8, 7));
      cp = 8;
    } else if (p % 4 == 1) {
      sp = gauss_sum(p);
      cp = p;
    } else {
      // gauss_sum(p)^2 = -p; divide by zeta_4.
      sp = mul(gauss_sum(p), inverse(zeta(4)));
      cp = 4 * p;
    }
    s = mul(s, sp);
    cond = lcm_long(cond, cp);
  }
  s = embed(s, cond);
  assert(eq(mul(s, s), from_rational(d)));
  return {cond, s};
}

std::optional<long> root_of_unity_order(const CyclotomicElement& x) {
  if (x.is_zero()) throw std::invalid_argument("root_of_unity_order: zero");
  auto r = as_root_of_unity(x);
  if (!r) return std::nullopt;
  return r->order();
}

RootOfUnity::RootOfUnity(long w, long e) {
  if (w < 1) throw std::invalid_argument("root of unity conductor must be >= 1");
  e %= w;
  if (e < 0) e += w;
  long g = std::gcd(e, w);
  if (e == 0) {
    conductor = 1;
    exponent = 0;
  } else {
    conductor = w / g;
    exponent = e / g;
  }
}

RootOfUnity ru_mul(const RootOfUnity& a, const RootOfUnity& b) {
  long L = lcm_long(a.conductor, b.conductor);
  return RootOfUnity(L, a.exponent * (L / a.conductor) + b.exponent * (L / b.conductor));
}

RootOfUnity ru_pow(const RootOfUnity& a, long e) {
  long m = e % a.conductor;
  return RootOfUnity(a.conductor, a.exponent * m);
}

RootOfUnity ru_inv(const RootOfUnity& a) { return RootOfUnity(a.conductor, -a.exponent); }

CyclotomicElement to_cyclotomic(const RootOfUnity& r) { return zeta(r.conductor, r.exponent); }

std::optional<RootOfUnity> as_root_of_unity(const CyclotomicElement& x) {
  long M = lcm_long(2, x.conductor);
  CyclotomicElement y = embed(x, M);
  CyclotomicElement z = zeta(M);
  CyclotomicElement p = from_rational(Rat(1), M);
  for (long j = 0; j < M; ++j) {
    if (p.coeffs == y.coeffs) return RootOfUnity(M, j);
    p = mul(p, z);
  }
  return std::nullopt;
}

bool lies_in_conductor(const CyclotomicElement& x, long W) {
  long L = lcm_long(x.conductor, W);
  CyclotomicElement y = embed(x, L);
  for (long a = 1; a < std::max<long>(2, L); ++a) {
    if (L > 1 && std::gcd(a, L) != 1) continue;
    if (a % W != 1 % W) continue;
    if (!eq(galois_act(a, y), y)) return false;
  }
  return true;
}

std::vector<std::string> coeff_strings(const CyclotomicElement& x) {
  std::vector<std::string> out;
  out.reserve(x.coeffs.size());
  for (const auto& c : x.coeffs) out.push_back(format_rat(c));
  return out;
}

}  // namespace blockcalc::cyclo
