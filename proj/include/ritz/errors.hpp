#pragma once

#include <stdexcept>
#include <string>

namespace ritz {

/// Failure categories surfaced by the library. The CLI maps these to
/// process exit codes (usage/parse -> 1, not-applicable -> 2, numerical -> 3).
enum class ErrorCode {
  NotSymmetric,
  NotPositiveSemidefinite,
  NoConvergence,
  EmptySpan,
  DimensionMismatch,
  SingularOperator,
  NotApplicable,
  InsufficientEigenvalues,
  GammaNotAboveMu,
  DegenerateGap,
  BracketFailure,
  MeshTooCoarse,
  ParseError,
  InvalidInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptySpan: return "EmptySpan";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InsufficientEigenvalues: return "InsufficientEigenvalues";
    case ErrorCode::GammaNotAboveMu: return "GammaNotAboveMu";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace ritz
