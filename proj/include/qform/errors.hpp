#pragma once

#include <stdexcept>
#include <string>

namespace qform {

enum class ErrorKind {
  NotSymmetric,
  OddDiagonal,
  NotPositiveDefinite,
  ReductionFailure,
  PrecisionTooLow,
  MissingPrime,
  MethodInvalid,
  StabilizationOverflow,
  DimensionTooSmall,
  BudgetExceeded,
  OverflowBudget,
  PivotFailure,
  GammaZeroN,
  TruncationInsufficient,
  GenusMismatch,
  DepthBudget,
  NotDiagonal,
  DensityZeroDenominator,
  EmptyWindow,
  InvalidArgument,
};

const char* error_name(ErrorKind kind);

// All module failures are reported through this type; the kind is what the
// CLI maps to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }
  bool is_budget() const {
    return kind_ == ErrorKind::BudgetExceeded || kind_ == ErrorKind::OverflowBudget ||
           kind_ == ErrorKind::DepthBudget;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace qform
