#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace desknum {

/// Failure categories raised by every module. The C API mirrors these one to
/// one as status codes, so the numeric values are part of the ABI.
enum class ErrorCode : int {
  InvalidArgument = 1,
  ShapeMismatch,
  SizeMismatch,
  DivisionByZero,
  EmptyInput,
  ZeroNorm,
  RelativeUndefined,
  NonFinite,
  Singular,
  NotSpd,
  ZeroDiagonal,
  NoConvergence,
  BadRank,
  RankDeficient,
  DomainError,
  NoSignChange,
  MaxIterations,
  ZeroDerivative,
  FlatSecant,
  SingularJacobian,
  SingularApproximation,
  DuplicateKnots,
  UnsortedKnots,
  TooFewPoints,
  BadPartition,
  OddPartition,
  BadOrder,
  NotPowerOfTwo,
  BadCutoff,
  BadKeep,
  NoPeak,
  SingularHessian,
  LineSearchFailure,
  NewtonFailure,
  Unstable,
  BadArchitecture,
  TooSmallBatch,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace desknum
