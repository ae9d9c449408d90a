#include "blockcalc/csa.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "blockcalc/errors.hpp"

namespace blockcalc::csa {

std::string place_name(const PlaceQ& v) { return v.infinite ? "inf" : v.prime.str(); }

namespace {

// Legendre symbol (u/p) of a rational p-adic unit, p odd.
int legendre_unit(const Rat& u, const Int& p) {
  Int x = (num(u) * den(u)) % p;
  if (x < 0) x += p;
  Int r = pow_mod(x, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

// Residue of an odd rational unit modulo 8.
long mod8(const Rat& u) {
  long n = static_cast<long>(num(u) % 8);
  long d = static_cast<long>(den(u) % 8);
  if (n < 0) n += 8;
  if (d < 0) d += 8;
  static constexpr long inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
  return (n * inv8[d]) % 8;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const PlaceQ& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = v.prime;
  if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol: place is not prime");
  int alpha = valuation(a, p), beta = valuation(b, p);
  Rat u = prime_to_part(a, p), w = prime_to_part(b, p);
  if (p == 2) {
    long eu = (mod8(u) % 4 == 3) ? 1 : 0;
    long ew = (mod8(w) % 4 == 3) ? 1 : 0;
    long ou = (mod8(u) == 3 || mod8(u) == 5) ? 1 : 0;
    long ow = (mod8(w) == 3 || mod8(w) == 5) ? 1 : 0;
    long e = eu * ew + alpha * ow + beta * ou;
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  if (beta % 2 != 0) s *= legendre_unit(u, p);
  if (alpha % 2 != 0) s *= legendre_unit(w, p);
  if (alpha % 2 != 0 && beta % 2 != 0 && (p - 1) / 2 % 2 == 1) s = -s;
  return s;
}

QuaternionAlgebraQ::QuaternionAlgebraQ(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a == 0 || b == 0) throw std::invalid_argument("quaternion algebra: zero structure constant");
}

RamificationData ramification_data(const QuaternionAlgebraQ& alg) {
  std::set<Int> candidates{2};
  for (const Rat& r : {alg.a, alg.b}) {
    for (const auto& [p, e] : factor(num(r))) candidates.insert(p);
    for (const auto& [p, e] : factor(den(r))) candidates.insert(p);
  }
  RamificationData out;
  if (hilbert_symbol(alg.a, alg.b, PlaceQ::real()) == -1) out.ramified.insert(PlaceQ::real());
  for (const Int& p : candidates)
    if (hilbert_symbol(alg.a, alg.b, PlaceQ::at(p)) == -1) out.ramified.insert(PlaceQ::at(p));
  if (out.ramified.size() % 2 != 0)
    throw InternalReciprocityViolation("odd ramification set for (" + format_rat(alg.a) + "," +
                                       format_rat(alg.b) + ")");
  out.schur_index = out.ramified.empty() ? 1 : 2;
  return out;
}

namespace {

std::vector<long> units_mod(long m) {
  std::vector<long> u;
  for (long a = 1; a < std::max(2L, m); ++a)
    if (m == 1 || std::gcd(a, m) == 1) u.push_back(a % m);
  if (u.empty()) u.push_back(1 % m);
  return u;
}

}  // namespace

AbelianFieldSpec AbelianFieldSpec::from_generators(long modulus, const std::vector<long>& gens) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  std::set<long> h{1 % modulus};
  for (long g : gens) {
    long r = ((g % modulus) + modulus) % modulus;
    if (modulus > 1 && std::gcd(r, modulus) != 1)
      throw std::invalid_argument("subgroup generator is not a unit");
    h.insert(r);
  }
  // closure
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<long> cur(h.begin(), h.end());
    for (long x : cur)
      for (long y : cur)
        if (h.insert((x * y) % modulus).second) grew = true;
  }
  AbelianFieldSpec s;
  s.modulus = modulus;
  s.subgroup.assign(h.begin(), h.end());
  return s;
}

AbelianFieldSpec AbelianFieldSpec::cyclotomic(long m) {
  AbelianFieldSpec s;
  s.modulus = m;
  s.subgroup = {1 % m};
  return s;
}

long AbelianFieldSpec::degree() const {
  long ph = 1;
  {  // phi(modulus)
    long n = modulus, r = n;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        r -= r / p;
        while (n % p == 0) n /= p;
      }
    if (n > 1) r -= r / n;
    ph = r;
  }
  return ph / static_cast<long>(subgroup.size());
}

bool AbelianFieldSpec::contains(long a) const {
  long r = ((a % modulus) + modulus) % modulus;
  return std::binary_search(subgroup.begin(), subgroup.end(), r);
}

bool AbelianFieldSpec::is_cyclic() const {
  long idx = degree();
  for (long u : units_mod(modulus)) {
    long pw = u, k = 1;
    while (!contains(pw)) {
      pw = (pw * u) % modulus;
      ++k;
    }
    if (k == idx) return true;
  }
  return idx == 1;
}

long local_degree_in_abelian(const PlaceQ& v, const AbelianFieldSpec& k) {
  long m = k.modulus;
  if (m <= 2) return 1;
  if (v.infinite) return k.contains(m - 1) ? 1 : 2;

  long p = static_cast<long>(v.prime);
  // prime-to-p part of the modulus
  long mp = m;
  while (mp % p == 0) mp /= p;
  // Decomposition subgroup: units congruent to a power of p modulo mp
  // (inertia is the kernel of reduction mod mp, Frobenius lifts p).
  std::set<long> ppowers;
  {
    long x = 1 % mp;
    do {
      ppowers.insert(x);
      x = (x * (p % mp)) % mp;
    } while (!ppowers.count(x));
  }
  long d_size = 0, dh_size = 0;
  for (long u : units_mod(m)) {
    if (ppowers.count(u % mp)) {
      ++d_size;
      if (k.contains(u)) ++dh_size;
    }
  }
  return d_size / std::max(1L, dh_size);
}

bool splits(const RamificationData& ram, const AbelianFieldSpec& k) {
  if (ram.schur_index == 1) return true;
  for (const PlaceQ& v : ram.ramified)
    if (local_degree_in_abelian(v, k) % 2 != 0) return false;
  return true;
}

bool splits(const QuaternionAlgebraQ& alg, const AbelianFieldSpec& k) {
  return splits(ramification_data(alg), k);
}

long min_cyclotomic_splitting(const RamificationData& ram, long cap) {
  for (long m = 1; m <= cap; ++m)
    if (splits(ram, AbelianFieldSpec::cyclotomic(m))) return m;
  throw SearchBoundExceeded("no cyclotomic splitting field with conductor <= " + std::to_string(cap));
}

long min_cyclotomic_splitting(const QuaternionAlgebraQ& alg, long cap) {
  return min_cyclotomic_splitting(ramification_data(alg), cap);
}

namespace {

// Generators of (Z/m)* with their orders, via CRT from the prime-power parts.
struct UnitGenerators {
  std::vector<long> gens;
  std::vector<long> orders;  // product = phi(m)
};

long order_mod(long a, long m) {
  long x = a % m, k = 1;
  while (x != 1 % m) {
    x = (x * a) % m;
    ++k;
  }
  return k;
}

long primitive_root(long p, long pk) {  // primitive root modulo p^k (p odd prime)
  long phi_p = p - 1;
  for (long g = 2; g < p; ++g) {
    if (order_mod(g, p) == phi_p) {
      // lift to p^k: g works unless g^(p-1) = 1 mod p^2
      if (pk == p) return g;
      long pp = p * p;
      long t = 1;
      for (long i = 0; i < p - 1; ++i) t = (t * g) % pp;
      return t != 1 ? g : g + p;
    }
  }
  throw Error("no primitive root found");
}

// CRT lift: x = r mod q, x = 1 mod (m/q).
long crt_lift(long r, long q, long m) {
  long rest = m / q;
  for (long x = r % m; ; x += q) {
    if (x % rest == 1 % rest) return x % m;
  }
}

UnitGenerators unit_generators(long m) {
  UnitGenerators out;
  long rem = m;
  std::vector<std::pair<long, long>> parts;  // (p, p^k)
  for (long p = 2; p * p <= rem; ++p)
    if (rem % p == 0) {
      long q = 1;
      while (rem % p == 0) {
        rem /= p;
        q *= p;
      }
      parts.emplace_back(p, q);
    }
  if (rem > 1) parts.emplace_back(rem, rem);
  for (auto [p, q] : parts) {
    if (p == 2) {
      if (q == 2) continue;
      if (q == 4) {
        out.gens.push_back(crt_lift(3, q, m));
        out.orders.push_back(2);
      } else {
        out.gens.push_back(crt_lift(q - 1, q, m));
        out.orders.push_back(2);
        out.gens.push_back(crt_lift(5, q, m));
        out.orders.push_back(q / 4);
      }
    } else {
      long g = primitive_root(p, q);
      out.gens.push_back(crt_lift(g, q, m));
      out.orders.push_back(q - q / p);
    }
  }
  return out;
}

}  // namespace

AbelianFieldSpec grunwald_wang_search(const std::vector<LocalDegreeConstraint>& constraints, long n,
                                      long modulus_cap) {
  long need = 1;
  for (const auto& c : constraints) {
    if (c.required_divisor < 1) throw std::invalid_argument("constraint divisor must be positive");
    if (c.place.infinite && c.required_divisor > 2)
      throw std::invalid_argument("real-place constraint must be <= 2");
    need = std::lcm(need, c.required_divisor);
  }
  if (n % need != 0) throw std::invalid_argument("degree not divisible by the lcm of constraints");
  if (n == 1) return AbelianFieldSpec::cyclotomic(1);

  for (long m = 1; m <= modulus_cap; ++m) {
    UnitGenerators ug = unit_generators(m);
    size_t k = ug.gens.size();
    // Discrete-log table: unit -> exponent tuple over the generators.
    std::map<long, std::vector<long>> dlog;
    {
      std::vector<long> idx(k, 0);
      while (true) {
        long u = 1 % m;
        for (size_t i = 0; i < k; ++i) {
          long t = ug.gens[i];
          for (long e = 0; e < idx[i]; ++e) u = (u * t) % m;
        }
        // recompute directly (idx small): u = prod gens[i]^idx[i]
        dlog.emplace(u, idx);
        long i = static_cast<long>(k) - 1;
        for (; i >= 0; --i) {
          if (++idx[i] < ug.orders[i]) break;
          idx[i] = 0;
        }
        if (i < 0) break;
      }
    }
    // Characters (Z/m)* -> Z/n: choose image a_i of each generator with
    // d_i * a_i = 0 mod n; surjective iff gcd(a_1..a_k, n) = 1.
    std::vector<long> g_i(k), step(k);
    for (size_t i = 0; i < k; ++i) {
      g_i[i] = std::gcd(ug.orders[i], n);
      step[i] = n / g_i[i];
    }
    std::vector<long> choice(k, 0);
    while (true) {
      long g = n;
      for (size_t i = 0; i < k; ++i) g = std::gcd(g, choice[i] * step[i]);
      if (g == 1 || (n == 1)) {
        std::vector<long> hh;
        for (const auto& [u, exps] : dlog) {
          long val = 0;
          for (size_t i = 0; i < k; ++i) val = (val + exps[i] * (choice[i] * step[i])) % n;
          if (val == 0) hh.push_back(u);
        }
        AbelianFieldSpec cand;
        cand.modulus = m;
        std::sort(hh.begin(), hh.end());
        cand.subgroup = std::move(hh);
        bool ok = cand.degree() == n;
        for (const auto& c : constraints) {
          if (!ok) break;
          if (local_degree_in_abelian(c.place, cand) % c.required_divisor != 0) ok = false;
        }
        if (ok) return cand;
      }
      long i = static_cast<long>(k) - 1;
      for (; i >= 0; --i) {
        if (++choice[i] < g_i[i]) break;
        choice[i] = 0;
      }
      if (i < 0) break;
      if (k == 0) break;
    }
    if (k == 0 && n == 1) return AbelianFieldSpec::cyclotomic(1);
  }
  throw SearchBoundExceeded("no cyclic field found with modulus <= " + std::to_string(modulus_cap));
}

}  // namespace blockcalc::csa
