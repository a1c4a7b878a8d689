#include "desknum/error.hpp"

namespace desknum {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::RelativeUndefined: return "RelativeUndefined";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::ZeroDerivative: return "ZeroDerivative";
    case ErrorCode::FlatSecant: return "FlatSecant";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::SingularApproximation: return "SingularApproximation";
    case ErrorCode::DuplicateKnots: return "DuplicateKnots";
    case ErrorCode::UnsortedKnots: return "UnsortedKnots";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::OddPartition: return "OddPartition";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::BadCutoff: return "BadCutoff";
    case ErrorCode::BadKeep: return "BadKeep";
    case ErrorCode::NoPeak: return "NoPeak";
    case ErrorCode::SingularHessian: return "SingularHessian";
    case ErrorCode::LineSearchFailure: return "LineSearchFailure";
    case ErrorCode::NewtonFailure: return "NewtonFailure";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::BadArchitecture: return "BadArchitecture";
    case ErrorCode::TooSmallBatch: return "TooSmallBatch";
  }
  return "Unknown";
}

}  // namespace desknum
