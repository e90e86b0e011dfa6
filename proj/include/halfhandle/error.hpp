#pragma once

#include <stdexcept>
#include <string>

namespace hh {

// Error taxonomy. Parse errors are malformed input (CLI exit 1), guard
// errors are refused moves or failed preconditions (exit 2), numeric
// errors are integrator/solver failures (exit 3).
enum class ErrorCode {
  // parse / structural
  Parse,
  // guards
  UnknownId,
  RangeError,
  OrderConflict,
  ScheduleConflict,
  IndexOutOfRange,
  Obstruction,
  MixedInteriorBoundary,
  StableUnstableMix,
  NonUniqueTrajectory,
  IndexMismatch,
  SiteMismatch,
  Precondition,
  // numeric
  StepUnderflow,
  RegionEmpty,
  DegenerateNormal,
  Overflow,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::OrderConflict: return "OrderConflict";
    case ErrorCode::ScheduleConflict: return "ScheduleConflict";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Obstruction: return "Obstruction";
    case ErrorCode::MixedInteriorBoundary: return "MixedInteriorBoundary";
    case ErrorCode::StableUnstableMix: return "StableUnstableMix";
    case ErrorCode::NonUniqueTrajectory: return "NonUniqueTrajectory";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::SiteMismatch: return "SiteMismatch";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::RegionEmpty: return "RegionEmpty";
    case ErrorCode::DegenerateNormal: return "DegenerateNormal";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code),
        detail_(msg) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

  bool is_parse() const { return code_ == ErrorCode::Parse; }
  bool is_numeric() const {
    return code_ == ErrorCode::StepUnderflow || code_ == ErrorCode::RegionEmpty ||
           code_ == ErrorCode::DegenerateNormal;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace hh
