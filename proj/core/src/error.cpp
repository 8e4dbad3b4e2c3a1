#include "ivord/error.hpp"

namespace ivord {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::TooManyClasses: return "TooManyClasses";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::FitFailed: return "FitFailed";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::SplitFailed: return "SplitFailed";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ivord
