#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace c1mortar {

enum class ErrorCode {
  NonMonotone,
  MultiplicityOutOfRange,
  InvalidKnotVector,
  TooFewElements,
  DegreeTooLow,
  OutOfDomain,
  OrderOutOfRange,
  DegenerateJacobian,
  NonConformingInterface,
  OrientationMismatch,
  DanglingSide,
  SingularFit,
  SingularSystem,
  ResidualTooLarge,
  MeshTooCoarse,
  InvalidConfig,
  ParseError,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

// CLI exit status: 2 config, 3 geometry, 4 solver, 5 I/O.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace c1mortar
