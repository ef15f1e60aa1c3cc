#pragma once

#include <stdexcept>
#include <string>

namespace kam {

enum class ErrorCode {
  // data / configuration validation
  MissingColumn,
  DuplicateFirm,
  NonNumericCell,
  NegativeValue,
  SchemaMismatch,
  InvalidDataset,
  ZeroDataUnderSbm,
  EmptyColumnUnderMinimum,
  SbmWeightsRejected,
  RankingAtZeroEpsilon,
  NoGoalDefined,
  InvalidArgument,
  IoError,
  // solver
  NumericalBreakdown,
  DegenerateScaling,
  SolveFailed,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn:           return "MissingColumn";
    case ErrorCode::DuplicateFirm:           return "DuplicateFirm";
    case ErrorCode::NonNumericCell:          return "NonNumericCell";
    case ErrorCode::NegativeValue:           return "NegativeValue";
    case ErrorCode::SchemaMismatch:          return "SchemaMismatch";
    case ErrorCode::InvalidDataset:          return "InvalidDataset";
    case ErrorCode::ZeroDataUnderSbm:        return "ZeroDataUnderSbm";
    case ErrorCode::EmptyColumnUnderMinimum: return "EmptyColumnUnderMinimum";
    case ErrorCode::SbmWeightsRejected:      return "SbmWeightsRejected";
    case ErrorCode::RankingAtZeroEpsilon:    return "RankingAtZeroEpsilon";
    case ErrorCode::NoGoalDefined:           return "NoGoalDefined";
    case ErrorCode::InvalidArgument:         return "InvalidArgument";
    case ErrorCode::IoError:                 return "IoError";
    case ErrorCode::NumericalBreakdown:      return "NumericalBreakdown";
    case ErrorCode::DegenerateScaling:       return "DegenerateScaling";
    case ErrorCode::SolveFailed:             return "SolveFailed";
  }
  return "UnknownError";
}

// Solver-side failures map to a different CLI exit code than validation errors.
inline bool is_solver_error(ErrorCode code) {
  return code == ErrorCode::NumericalBreakdown || code == ErrorCode::DegenerateScaling ||
         code == ErrorCode::SolveFailed;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kam
