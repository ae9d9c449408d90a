#ifndef BLOCKCALC_PIPELINE_HPP
#define BLOCKCALC_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "blockcalc/classify.hpp"
#include "blockcalc/cohom.hpp"
#include "blockcalc/csa.hpp"

namespace blockcalc::pipeline {

/// Validated input datum: cocycle data, the algebra (by structure constants or
/// an explicit ramification list), and the declared endomorphism flags.
struct IsogenyDatum {
  cohom::Cocycle2 cocycle;
  std::optional<csa::QuaternionAlgebraQ> algebra;
  csa::RamificationData ramification;  // computed from (a,b) or declared
  bool k_has_real_embedding = true;
  classify::AlbertType albert_type = classify::AlbertType::I;
  long f = 1;
  long t = 1;
  long dim_b = 1;
};

/// Parses and validates JSON.  Throws SchemaError (with a path) or
/// CocycleInvalid.
IsogenyDatum parse_datum(const std::string& text);

struct StageNote {
  std::string stage;
  std::string summary;
};

struct ClassificationReport {
  std::vector<std::string> ramified_places;
  long t = 1;
  long m_cyc = 1;
  long m = 1;                           // class order
  std::vector<std::string> witness_d;   // rational d(sigma), per group element
  long beta_conductor = 1;
  std::vector<std::vector<std::string>> beta_values;  // coeff strings per element
  long chi_order = 1;
  long epsilon_order = 1;
  long e_beta_conductor = 1;
  long e_beta_degree = 1;               // n_Ebeta over F = Q
  std::vector<long> e_beta_fixing;
  bool splits_verdict = false;
  bool descent_ok = false;
  bool double_centralizer_ok = false;
  long f = 1;
  long dim_b = 1;
  long dim_a = 1;
  long n = 1;
  long field_degree = 1;
  bool building_block = false;
  bool gl2_type = false;
  classify::AlbertVerdict albert;
  std::vector<StageNote> stages;
};

/// Runs the full nine-stage pipeline; every stage's postcondition is
/// re-verified, PipelineInvariantViolation on any internal disagreement.
ClassificationReport run_pipeline(const IsogenyDatum& d);

/// format: "json" (byte-stable) or "human"; anything else is rejected with
/// std::invalid_argument.
std::string emit_report(const ClassificationReport& r, const std::string& format);

}  // namespace blockcalc::pipeline

#endif
