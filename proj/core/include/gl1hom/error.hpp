#ifndef GL1HOM_ERROR_HPP
#define GL1HOM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gl1hom {

enum class Errc {
  // input errors
  EmptyWord,
  InvalidCharacter,
  ZeroGenerator,
  IndexTooLarge,
  LengthMismatch,
  NotPrime,
  PolyParseError,
  CorpusError,
  ConfigError,
  CacheError,
  // contract violations between modules
  ResolutionMismatch,
  WrongEdge,
  OracleScale,
  Singular,
  // internal consistency faults: these signal a convention or implementation bug
  NonIntegral,
  NonIntegerEvaluation,
  GradingViolation,
  DSquareNonzero,
  NotPolynomial,
  NotSymmetric,
  WrongDegree,
  // cooperative cancellation
  Timeout,
};

std::string_view to_string(Errc code) noexcept;

/// True for the codes that indicate an internal fault rather than bad input.
bool is_internal_fault(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gl1hom

#endif  // GL1HOM_ERROR_HPP
