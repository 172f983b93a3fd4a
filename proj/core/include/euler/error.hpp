#pragma once

#include <stdexcept>
#include <string>

namespace euler {

enum class ErrorCode {
  InvalidInput,
  AssumptionViolation,
  InfeasibleParameters,
  CombinatorialChange,
  DegenerateMiter,
  IllDefinedMiter,
  UnprojectableVertex,
  OddDegree,
  Disconnected,
  DegenerateSlice,
  InteriorParityDefect,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code; the
// message is meant for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace euler
