#ifndef BLOCKCALC_CYCLO_HPP
#define BLOCKCALC_CYCLO_HPP

#include <optional>
#include <utility>
#include <vector>

#include "blockcalc/rational.hpp"

namespace blockcalc::cyclo {

long phi(long n);
long lcm_long(long a, long b);

/// Monic N-th cyclotomic polynomial, coefficient vector of length phi(N)+1
/// (constant term first).  Cached per conductor.
const std::vector<Rat>& cyclotomic_polynomial(long n);

/// Exact element of Q(zeta_N), stored as a coefficient vector over the power
/// basis {zeta_N^i : 0 <= i < phi(N)}, fully reduced modulo Phi_N.
struct CyclotomicElement {
  long conductor = 1;
  std::vector<Rat> coeffs{Rat(0)};

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // coeff of zeta^0 (equals the value when is_rational())
};

CyclotomicElement reduce_mod_cyclotomic(std::vector<Rat> raw, long N);
CyclotomicElement from_rational(const Rat& r, long N = 1);
CyclotomicElement zeta(long N, long exponent = 1);

/// Rewrites x over conductor M; requires conductor | M.
CyclotomicElement embed(const CyclotomicElement& x, long M);

bool eq(const CyclotomicElement& a, const CyclotomicElement& b);

CyclotomicElement add(const CyclotomicElement& a, const CyclotomicElement& b);
CyclotomicElement sub(const CyclotomicElement& a, const CyclotomicElement& b);
CyclotomicElement neg(const CyclotomicElement& a);
CyclotomicElement mul(const CyclotomicElement& a, const CyclotomicElement& b);
CyclotomicElement inverse(const CyclotomicElement& a);  // throws DivisionByZero
CyclotomicElement pow(const CyclotomicElement& a, long e);

/// zeta_N |-> zeta_N^a; requires gcd(a, N) = 1, else throws InvalidAutomorphism.
CyclotomicElement galois_act(long a, const CyclotomicElement& x);

struct SubfieldInfo {
  long conductor;
  long degree;                       // [Q(values) : Q]
  std::vector<long> fixing_subgroup;  // H <= (Z/N)*, sorted
};

/// Fixing subgroup and degree of the field generated by the given values,
/// all considered inside Q(zeta_N).
SubfieldInfo generated_subfield(const std::vector<CyclotomicElement>& values, long N);

/// A cyclotomic square root of d != 0, via the Gauss-sum table
/// sqrt(2) = zeta_8 + zeta_8^-1, sqrt(-1) = zeta_4, sqrt(p) for p = 1 mod 4,
/// sqrt(-p) for p = 3 mod 4, composed multiplicatively.
std::pair<long, CyclotomicElement> sqrt_as_cyclotomic(const Rat& d);

/// Least m >= 1 with x^m = 1, or nullopt when x is not torsion.  x must be
/// nonzero.
std::optional<long> root_of_unity_order(const CyclotomicElement& x);

/// zeta_W^exponent in canonical form (minimal conductor, exponent coprime to it).
struct RootOfUnity {
  long conductor = 1;
  long exponent = 0;

  RootOfUnity() = default;
  RootOfUnity(long w, long e);  // canonicalizes

  long order() const { return conductor; }
  bool operator==(const RootOfUnity&) const = default;
};

RootOfUnity ru_mul(const RootOfUnity& a, const RootOfUnity& b);
RootOfUnity ru_pow(const RootOfUnity& a, long e);
RootOfUnity ru_inv(const RootOfUnity& a);
CyclotomicElement to_cyclotomic(const RootOfUnity& r);

/// Identifies x as a root of unity if it is one.
std::optional<RootOfUnity> as_root_of_unity(const CyclotomicElement& x);

/// True iff x lies in Q(zeta_W).
bool lies_in_conductor(const CyclotomicElement& x, long W);

/// JSON-facing form: {"conductor": N, "coeffs": ["p/q", ...]}.
std::vector<std::string> coeff_strings(const CyclotomicElement& x);

}  // namespace blockcalc::cyclo

#endif
