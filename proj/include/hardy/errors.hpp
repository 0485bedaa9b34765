#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

enum class ErrorCode {
  AsymmetricInput,
  Disconnected,
  NonpositiveWeight,
  NonpositiveFunction,
  NonpositiveInput,
  NonpositiveGroundState,
  NonpositiveSupersolution,
  NotSuperharmonic,
  OrderViolation,
  InfiniteSupport,
  ConstantFunction,
  LevelSetTouchesBoundary,
  NegativeF,
  DomainError,
  SolverDivergence,
  NotPositiveDefinite,
  ZeroWeightRegion,
  EigSolverFailure,
  UnsupportedFamily,
  InvalidInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hardy
