#include "gl1hom/error.hpp"

namespace gl1hom {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::InvalidCharacter: return "InvalidCharacter";
    case Errc::ZeroGenerator: return "ZeroGenerator";
    case Errc::IndexTooLarge: return "IndexTooLarge";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotPrime: return "NotPrime";
    case Errc::PolyParseError: return "PolyParseError";
    case Errc::CorpusError: return "CorpusError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::CacheError: return "CacheError";
    case Errc::ResolutionMismatch: return "ResolutionMismatch";
    case Errc::WrongEdge: return "WrongEdge";
    case Errc::OracleScale: return "OracleScale";
    case Errc::Singular: return "Singular";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::NonIntegerEvaluation: return "NonIntegerEvaluation";
    case Errc::GradingViolation: return "GradingViolation";
    case Errc::DSquareNonzero: return "DSquareNonzero";
    case Errc::NotPolynomial: return "NotPolynomial";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::Timeout: return "Timeout";
  }
  return "Unknown";
}

bool is_internal_fault(Errc code) noexcept {
  switch (code) {
    case Errc::NonIntegral:
    case Errc::NonIntegerEvaluation:
    case Errc::GradingViolation:
    case Errc::DSquareNonzero:
    case Errc::NotPolynomial:
    case Errc::NotSymmetric:
    case Errc::WrongDegree:
    case Errc::Singular:
      return true;
    default:
      return false;
  }
}

}  // namespace gl1hom
