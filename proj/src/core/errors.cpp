#include "qform/errors.hpp"

namespace qform {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::OddDiagonal: return "OddDiagonal";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::ReductionFailure: return "ReductionFailure";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::MissingPrime: return "MissingPrime";
    case ErrorKind::MethodInvalid: return "MethodInvalid";
    case ErrorKind::StabilizationOverflow: return "StabilizationOverflow";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::OverflowBudget: return "OverflowBudget";
    case ErrorKind::PivotFailure: return "PivotFailure";
    case ErrorKind::GammaZeroN: return "GammaZeroN";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::GenusMismatch: return "GenusMismatch";
    case ErrorKind::DepthBudget: return "DepthBudget";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::DensityZeroDenominator: return "DensityZeroDenominator";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qform
