#ifndef BLOCKCALC_CSA_HPP
#define BLOCKCALC_CSA_HPP

#include <set>
#include <vector>

#include "blockcalc/rational.hpp"

namespace blockcalc::csa {

/// A place of Q: a finite prime or the real place.
struct PlaceQ {
  bool infinite = false;
  Int prime = 0;  // meaningful when !infinite

  static PlaceQ real() { return PlaceQ{true, 0}; }
  static PlaceQ at(Int p) { return PlaceQ{false, std::move(p)}; }

  bool operator==(const PlaceQ&) const = default;
  bool operator<(const PlaceQ& o) const {
    if (infinite != o.infinite) return o.infinite;  // finite places first, then the real place
    return prime < o.prime;
  }
};

std::string place_name(const PlaceQ& v);

/// Hilbert symbol (a, b)_v over Q_v, by the valuation/residue formulas.
int hilbert_symbol(const Rat& a, const Rat& b, const PlaceQ& v);

/// Quaternion algebra (a, b / Q): i^2 = a, j^2 = b, ij = -ji.
struct QuaternionAlgebraQ {
  Rat a, b;

  QuaternionAlgebraQ(Rat a_, Rat b_);
};

struct RamificationData {
  std::set<PlaceQ> ramified;
  int schur_index = 1;  // 1 if split, else 2
};

/// Places with symbol -1; throws InternalReciprocityViolation when the set
/// has odd cardinality.
RamificationData ramification_data(const QuaternionAlgebraQ& alg);

/// Abelian number field: fixed field of H <= (Z/M)* inside Q(zeta_M).
struct AbelianFieldSpec {
  long modulus = 1;
  std::vector<long> subgroup;  // all elements of H, sorted, containing 1

  static AbelianFieldSpec from_generators(long modulus, const std::vector<long>& gens);
  static AbelianFieldSpec cyclotomic(long m);  // H trivial: the full Q(zeta_m)

  long degree() const;  // phi(M)/|H|
  bool contains(long a) const;
  bool is_cyclic() const;  // (Z/M)*/H cyclic
};

/// Local degree [K_v : Q_v] of (any) place of K above v; K abelian, so this
/// is well defined.  Computed from the decomposition subgroup in (Z/M)*.
long local_degree_in_abelian(const PlaceQ& v, const AbelianFieldSpec& k);

/// True iff K splits the algebra: every ramified place must have even local
/// degree (the real place requires K imaginary).
bool splits(const QuaternionAlgebraQ& alg, const AbelianFieldSpec& k);
bool splits(const RamificationData& ram, const AbelianFieldSpec& k);

/// Least m >= 1 with Q(zeta_m) a splitting field.
long min_cyclotomic_splitting(const QuaternionAlgebraQ& alg, long cap = 10000);
long min_cyclotomic_splitting(const RamificationData& ram, long cap = 10000);

struct LocalDegreeConstraint {
  PlaceQ place;
  long required_divisor;  // n_i; must be <= 2 at the real place
};

/// Bounded constructive search for a cyclic degree-n extension of Q whose
/// local degree at each constrained place is divisible by the stated n_i.
/// Every candidate is verified place by place before being returned.
AbelianFieldSpec grunwald_wang_search(const std::vector<LocalDegreeConstraint>& constraints, long n,
                                      long modulus_cap = 5000);

}  // namespace blockcalc::csa

#endif
