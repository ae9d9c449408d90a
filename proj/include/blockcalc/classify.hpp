#ifndef BLOCKCALC_CLASSIFY_HPP
#define BLOCKCALC_CLASSIFY_HPP

#include <string>
#include <vector>

namespace blockcalc::classify {

enum class AlbertType { I, II, III, IV };

const char* albert_name(AlbertType t);
AlbertType albert_from_string(const std::string& s);

/// Declared endomorphism data of a building block candidate: B a central
/// division algebra over F with Schur index t.
struct EndomorphismDatum {
  long f = 1;  // [F:Q]
  long t = 1;  // Schur index
  AlbertType albert_type = AlbertType::I;
  bool center_totally_real = true;
  long dim_b = 1;
};

/// Throws std::invalid_argument on inconsistent declarations
/// (non-positive entries, type I with t > 1).
void validate(const EndomorphismDatum& d);

struct VarietyShape {
  long dim_a = 1;
  long n = 1;             // multiplicity in A ~ B^n
  long field_degree = 1;  // [E:Q]
};

/// [E:Q] = dim A.
bool is_gl2_type(const VarietyShape& s);

/// t <= 2 and t [F:Q] = dim B.
bool building_block_check(const EndomorphismDatum& d);

/// dim A = n_Ebeta [F:Q], n = n_Ebeta / t, [E:Q] = dim A.
/// Throws IndivisibleMultiplicity when t does not divide n_Ebeta.
VarietyShape dimension_bookkeeping(const EndomorphismDatum& d, long n_ebeta);

struct FactorPattern {
  long dim_factor;
  std::string conclusion;  // "admissible" | "excluded: CM" | "inadmissible"
};

/// For each candidate simple-factor-power dimension D <= dim_A: admissible
/// only at D = dim_A; the halving branch is flagged as the CM case.
std::vector<FactorPattern> factor_pattern_filter(long dim_a);

struct AlbertVerdict {
  bool accepted = false;
  bool flagged = false;  // accepted without constraint rather than by rule
  std::string reason;
};

AlbertVerdict albert_filter(const EndomorphismDatum& d, bool k_has_real_embedding);

}  // namespace blockcalc::classify

#endif
