#ifndef BLOCKCALC_ERRORS_HPP
#define BLOCKCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockcalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};
struct InvalidAutomorphism : Error {
  explicit InvalidAutomorphism(const std::string& m) : Error("invalid automorphism: " + m) {}
};
struct CoefficientBasisTooSmall : Error {
  explicit CoefficientBasisTooSmall(const std::string& m) : Error("coefficient basis too small: " + m) {}
};
struct UnsupportedClassOrder : Error {
  explicit UnsupportedClassOrder(int m) : Error("unsupported class order " + std::to_string(m)) {}
};
struct InsufficientCoefficients : Error {
  explicit InsufficientCoefficients(const std::string& m) : Error("insufficient coefficients: " + m) {}
};
struct NotACharacter : Error {
  explicit NotACharacter(const std::string& m) : Error("not a character: " + m) {}
};
struct InternalReciprocityViolation : Error {
  explicit InternalReciprocityViolation(const std::string& m) : Error("reciprocity violation: " + m) {}
};
struct SearchBoundExceeded : Error {
  explicit SearchBoundExceeded(const std::string& m) : Error("search bound exceeded: " + m) {}
};
struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& m) : Error("degree mismatch: " + m) {}
};
struct NoConjugatorFound : Error {
  explicit NoConjugatorFound(const std::string& m) : Error("no conjugator found: " + m) {}
};
struct EmbeddingIncomplete : Error {
  explicit EmbeddingIncomplete(const std::string& m) : Error("embedding incomplete: " + m) {}
};
struct IndivisibleMultiplicity : Error {
  explicit IndivisibleMultiplicity(const std::string& m) : Error("indivisible multiplicity: " + m) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& path) : Error("schema error at " + path) {}
};
struct CocycleInvalid : Error {
  explicit CocycleInvalid(const std::string& m) : Error("invalid cocycle: " + m) {}
};
struct PipelineInvariantViolation : Error {
  explicit PipelineInvariantViolation(const std::string& m) : Error("pipeline invariant violation: " + m) {}
};

}  // namespace blockcalc

#endif
