#ifndef BLOCKCALC_SNF_HPP
#define BLOCKCALC_SNF_HPP

#include <optional>
#include <vector>

#include "blockcalc/rational.hpp"

namespace blockcalc {

using IntMat = std::vector<std::vector<Int>>;

/// U * A * V = D with U, V unimodular and D diagonal (entries d[0..rank) > 0).
struct SmithResult {
  IntMat U, V;
  std::vector<Int> diag;  // length min(rows, cols), zeros past rank
  int rank;
  int rows, cols;
};

SmithResult smith_normal_form(IntMat a);

/// One integer solution x of A x = b, or nullopt if none exists.
std::optional<std::vector<Int>> solve_integer(const SmithResult& s, const std::vector<Int>& b);

/// Least m >= 1 such that m*b lies in the integer column span of A, or nullopt
/// when no multiple does.
std::optional<Int> least_multiple_in_image(const SmithResult& s, const std::vector<Int>& b);

}  // namespace blockcalc

#endif
