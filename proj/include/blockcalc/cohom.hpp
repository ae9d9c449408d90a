#ifndef BLOCKCALC_COHOM_HPP
#define BLOCKCALC_COHOM_HPP

#include <string>
#include <vector>

#include "blockcalc/cyclo.hpp"
#include "blockcalc/rational.hpp"

namespace blockcalc::cohom {

/// Finite group given by its multiplication table; element 0 is the identity.
/// The table is verified (identity, inverses, associativity) at construction.
struct FiniteGroup {
  int order = 1;
  std::vector<std::vector<int>> table{{0}};

  static FiniteGroup from_table(std::vector<std::vector<int>> t);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  /// Direct product; index of (a, b) is a * h.order + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const;
  bool operator==(const FiniteGroup&) const = default;
};

/// Coefficient group mu_W x <b_1, ..., b_k>: a torsion root of unity times a
/// free abelian group on declared multiplicatively independent rationals
/// (positive primes for F = Q, with signs carried by the W = 2 torsion part).
struct CoefficientBasis {
  long torsion_conductor = 2;
  std::vector<Rat> elements;
};

struct MultiplicativeValue {
  long torsion = 0;            // exponent of zeta_W
  std::vector<long> exponents;  // over the declared basis

  bool operator==(const MultiplicativeValue&) const = default;
};

MultiplicativeValue mv_one(const CoefficientBasis& basis);
MultiplicativeValue mv_mul(const CoefficientBasis& basis, const MultiplicativeValue& a,
                           const MultiplicativeValue& b);
MultiplicativeValue mv_inv(const CoefficientBasis& basis, const MultiplicativeValue& a);
MultiplicativeValue mv_pow(const CoefficientBasis& basis, const MultiplicativeValue& a, long e);
cyclo::CyclotomicElement mv_to_cyclotomic(const CoefficientBasis& basis, const MultiplicativeValue& a);
/// Requires the torsion part to be +-1 (W dividing 2, or even torsion exponent).
Rat mv_to_rational(const CoefficientBasis& basis, const MultiplicativeValue& a);
/// Factors r over the declared basis; throws CoefficientBasisTooSmall when the
/// support of r is not covered.
MultiplicativeValue mv_from_rational(const CoefficientBasis& basis, const Rat& r);

/// Tabulated normalized 2-cocycle on a finite group with values in the
/// coefficient group.
struct Cocycle2 {
  FiniteGroup group;
  CoefficientBasis basis;
  std::vector<std::vector<MultiplicativeValue>> table;

  const MultiplicativeValue& at(int s, int t) const { return table[s][t]; }
};

struct CocycleVerdict {
  bool ok = true;
  int sigma = -1, tau = -1, rho = -1;
  std::string reason;
};

CocycleVerdict is_cocycle(const Cocycle2& c);

/// (sigma, tau) |-> f(sigma) f(tau) f(sigma tau)^-1; f must be normalized f(1) = 1.
Cocycle2 coboundary_of(const FiniteGroup& g, const CoefficientBasis& basis,
                       const std::vector<MultiplicativeValue>& f);

struct ClassOrder {
  long m = 1;                              // order of [c] in H^2(G, F*)
  std::vector<MultiplicativeValue> witness;  // d with c^m = coboundary_of(d)
};

/// Least m with c^m a coboundary, with a deterministic witness (Smith normal
/// form over the free exponents, modulus W on the torsion part).
ClassOrder class_order(const Cocycle2& c);

/// Map beta on a finite group with nonzero cyclotomic values, beta(1) = 1,
/// carried at a single representation conductor.
struct SplittingMap {
  FiniteGroup group;
  long conductor = 1;
  std::vector<cyclo::CyclotomicElement> values;
};

/// beta(sigma) beta(tau) beta(sigma tau)^-1.
cyclo::CyclotomicElement coboundary_value(const SplittingMap& beta, int s, int t);

/// True iff the coboundary of beta equals c exactly at every pair.
bool splits_cocycle(const SplittingMap& beta, const Cocycle2& c);

/// Exact splitting map with values inside Q(zeta_W); supports class order
/// m in {1, 2}.  Throws UnsupportedClassOrder or InsufficientCoefficients.
SplittingMap split_cocycle(const Cocycle2& c, long W);

struct CharacterMap {
  FiniteGroup group;
  std::vector<cyclo::RootOfUnity> values;

  long order() const;
};

/// sigma |-> beta(sigma)^m / d(sigma); checked to be a homomorphism into
/// roots of unity, else NotACharacter.
CharacterMap epsilon_character(const SplittingMap& beta, long m,
                               const std::vector<MultiplicativeValue>& d,
                               const CoefficientBasis& basis);

struct AdjustedSplitting {
  SplittingMap beta;        // on the (possibly extended) group
  Cocycle2 inflated;        // cocycle inflated to that group
  std::vector<MultiplicativeValue> d_inflated;
  long chi_order = 1;       // order of the adjusting character (1 when degenerate)
  CharacterMap epsilon;     // epsilon of the returned beta
  bool extended = false;
};

/// Splitting-map adjustment: extends the group by a cyclic factor and twists
/// by its projection character so that zeta_n lands in E_beta.  Degenerate
/// cases (n = 1, or n | order(epsilon)) return beta unchanged.
AdjustedSplitting adjust_splitting_map(const SplittingMap& beta_prime, const Cocycle2& c, long n,
                                       long m, const std::vector<MultiplicativeValue>& d);

/// Degree and fixing data of E_beta = Q({beta(sigma)}).
cyclo::SubfieldInfo splitting_field_of(const SplittingMap& beta);

}  // namespace blockcalc::cohom

#endif
