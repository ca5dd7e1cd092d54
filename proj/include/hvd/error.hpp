#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hvd {

enum class ErrorCode {
  DomainViolation,
  ArityMismatch,
  ModelMismatch,
  NumericalUnderflow,
  CoincidentSites,
  DegenerateSurface,
  UnsupportedPath,
  DimensionUnsupported,
  DuplicateSites,
  EmptySites,
  NoExplicitGeometry,
  NotSquareRootFree,
  InvalidArgument,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::CoincidentSites: return "CoincidentSites";
    case ErrorCode::DegenerateSurface: return "DegenerateSurface";
    case ErrorCode::UnsupportedPath: return "UnsupportedPath";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::DuplicateSites: return "DuplicateSites";
    case ErrorCode::EmptySites: return "EmptySites";
    case ErrorCode::NoExplicitGeometry: return "NoExplicitGeometry";
    case ErrorCode::NotSquareRootFree: return "NotSquareRootFree";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the kernel. The code is stable and machine
/// readable; what() carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace hvd
