#ifndef BLOCKCALC_MATALG_HPP
#define BLOCKCALC_MATALG_HPP

#include <map>
#include <optional>
#include <vector>

#include "blockcalc/cohom.hpp"
#include "blockcalc/rational.hpp"

namespace blockcalc::matalg {

/// Element of a quaternion algebra (a, b / Q) in the basis 1, i, j, ij.
struct QuaternionElement {
  Rat w{}, x{}, y{}, z{};

  bool operator==(const QuaternionElement&) const = default;
};

/// Ambient algebra M_n(B): B is (a,b/Q) when quaternionic, else B = Q.
/// Dimension over Q is n^2 t^2 with t = 1 or 2.
struct Ambient {
  long n = 1;
  bool quaternionic = false;
  Rat a = Rat(-1), b = Rat(-1);

  int t() const { return quaternionic ? 2 : 1; }
  long dim() const { return n * n * t() * t(); }
};

QuaternionElement q_from_rat(const Rat& r);
QuaternionElement q_add(const QuaternionElement& p, const QuaternionElement& q);
QuaternionElement q_sub(const QuaternionElement& p, const QuaternionElement& q);
QuaternionElement q_mul(const Ambient& amb, const QuaternionElement& p, const QuaternionElement& q);
/// Reduced norm w^2 - a x^2 - b y^2 + ab z^2; multiplicative.
Rat reduced_norm(const Ambient& amb, const QuaternionElement& q);

struct MatrixOverB {
  long n = 1;
  std::vector<std::vector<QuaternionElement>> e;  // n x n

  bool operator==(const MatrixOverB&) const = default;
};

MatrixOverB mat_zero(long n);
MatrixOverB mat_identity(long n);
MatrixOverB mat_scalar(long n, const QuaternionElement& q);  // q * identity
MatrixOverB mat_add(const MatrixOverB& p, const MatrixOverB& q);
MatrixOverB mat_sub(const MatrixOverB& p, const MatrixOverB& q);
MatrixOverB mat_mul(const Ambient& amb, const MatrixOverB& p, const MatrixOverB& q);
MatrixOverB mat_scale(const Rat& c, const MatrixOverB& m);

/// Q-linear flattening of M_n(B); length amb.dim().  Rejects quaternion
/// components in a non-quaternionic ambient.
std::vector<Rat> flatten(const Ambient& amb, const MatrixOverB& m);
MatrixOverB unflatten(const Ambient& amb, const std::vector<Rat>& v);

/// Two-sided inverse in M_n(B) via the regular representation, if any.
std::optional<MatrixOverB> mat_inverse(const Ambient& amb, const MatrixOverB& m);
bool is_invertible(const Ambient& amb, const MatrixOverB& m);

// --- exact linear algebra over Q (rows = vectors) ---
std::vector<std::vector<Rat>> rref(std::vector<std::vector<Rat>> m);
long rank_of(const std::vector<std::vector<Rat>>& m);
/// Basis of {x : m x = 0}.
std::vector<std::vector<Rat>> kernel_basis(const std::vector<std::vector<Rat>>& m);
/// One solution of m x = rhs, if consistent.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> m,
                                             std::vector<Rat> rhs);

/// Unital subalgebra of M_n(B) given by generators, with a computed Q-basis.
struct SubalgebraSpec {
  Ambient amb;
  std::vector<MatrixOverB> generators;
  std::vector<MatrixOverB> basis;

  long dim() const { return static_cast<long>(basis.size()); }
};

SubalgebraSpec make_subalgebra(const Ambient& amb, std::vector<MatrixOverB> gens);

/// Full solution space of xg = gx over all generators of s.
SubalgebraSpec centralizer(const SubalgebraSpec& s);

bool same_span(const SubalgebraSpec& s1, const SubalgebraSpec& s2);

/// dim C(S) * dim S = n^2 t^2 and C(C(S)) = S.
bool verify_double_centralizer(const SubalgebraSpec& s);

/// Commutative, dim = n t, and sampled nonzero elements invertible
/// (determinant of the multiplication operator on the span).
bool is_maximal_subfield(const SubalgebraSpec& s);

/// Companion matrix of a monic polynomial of degree n (coefficients low to
/// high, length n+1), embedded with rational entries.  For degree <= 3 the
/// absence of rational roots is checked.
MatrixOverB companion_embedding(const std::vector<Rat>& minpoly, long n);

/// b with phi = b psi b^{-1}, both images of the same field generator.
/// Deterministic search over small coordinates in the solution space of
/// b psi - phi b = 0; throws NoConjugatorFound if none is invertible.
MatrixOverB skolem_noether_conjugator(const Ambient& amb, const MatrixOverB& phi,
                                      const MatrixOverB& psi);

/// Checks phi(beta(sigma)) phi(beta(tau)) = c(sigma,tau) phi(beta(sigma tau))
/// for all pairs; phi maps group elements to the matrix images of the
/// corresponding beta values.  Throws EmbeddingIncomplete on a missing image.
bool descent_cocycle_check(const cohom::Cocycle2& c, const Ambient& amb,
                           const std::map<int, MatrixOverB>& phi);

}  // namespace blockcalc::matalg

#endif
