#include "blockcalc/classify.hpp"

#include <stdexcept>

#include "blockcalc/errors.hpp"

namespace blockcalc::classify {

const char* albert_name(AlbertType t) {
  switch (t) {
    case AlbertType::I: return "I";
    case AlbertType::II: return "II";
    case AlbertType::III: return "III";
    case AlbertType::IV: return "IV";
  }
  return "?";
}

AlbertType albert_from_string(const std::string& s) {
  if (s == "I") return AlbertType::I;
  if (s == "II") return AlbertType::II;
  if (s == "III") return AlbertType::III;
  if (s == "IV") return AlbertType::IV;
  throw std::invalid_argument("unknown Albert type: " + s);
}

void validate(const EndomorphismDatum& d) {
  if (d.f < 1 || d.t < 1 || d.dim_b < 1)
    throw std::invalid_argument("endomorphism datum entries must be positive");
  if (d.albert_type == AlbertType::I && d.t != 1)
    throw std::invalid_argument("Albert type I forces Schur index 1");
  if ((d.albert_type == AlbertType::I || d.albert_type == AlbertType::II ||
       d.albert_type == AlbertType::III) &&
      !d.center_totally_real)
    throw std::invalid_argument("Albert types I-III have totally real center");
}

bool is_gl2_type(const VarietyShape& s) { return s.field_degree == s.dim_a; }

bool building_block_check(const EndomorphismDatum& d) {
  return d.t <= 2 && d.t * d.f == d.dim_b;
}

VarietyShape dimension_bookkeeping(const EndomorphismDatum& d, long n_ebeta) {
  if (n_ebeta < 1) throw std::invalid_argument("n_Ebeta must be positive");
  if (n_ebeta % d.t != 0)
    throw IndivisibleMultiplicity("Schur index does not divide [E_beta : F]");
  VarietyShape s;
  s.dim_a = n_ebeta * d.f;
  s.n = n_ebeta / d.t;
  s.field_degree = n_ebeta * d.f;
  return s;
}

std::vector<FactorPattern> factor_pattern_filter(long dim_a) {
  if (dim_a < 1) throw std::invalid_argument("dim_A must be positive");
  std::vector<FactorPattern> out;
  for (long d = 1; d <= dim_a; ++d) {
    if (d == dim_a)
      out.push_back({d, "admissible"});
    else if (2 * d == dim_a)
      out.push_back({d, "excluded: CM"});  // 2D divisible by dim_A only via the CM branch
    else
      out.push_back({d, "inadmissible"});
  }
  return out;
}

AlbertVerdict albert_filter(const EndomorphismDatum& d, bool k_has_real_embedding) {
  switch (d.albert_type) {
    case AlbertType::III:
      if (k_has_real_embedding)
        return {false, false, "isogenous to the square of a CM abelian variety"};
      return {true, true, "unconstrained: totally imaginary base field"};
    case AlbertType::IV:
      if (k_has_real_embedding) return {false, false, "non-real trace values"};
      return {true, true, "unconstrained: totally imaginary base field"};
    case AlbertType::I:
    case AlbertType::II:
      if (!d.center_totally_real) return {false, false, "center not totally real"};
      if (k_has_real_embedding) return {true, false, "totally real center with index <= 2"};
      return {true, true, "unconstrained: totally imaginary base field"};
  }
  return {false, false, "unreachable"};
}

}  // namespace blockcalc::classify
