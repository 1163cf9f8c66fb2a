#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tseek {

enum class ErrorCode {
  DegenerateSegment,
  NoFlip,
  PointBelowTerrain,
  InvalidTerrain,
  OutOfDomain,
  BudgetExceeded,
  InvalidSpec,
  NeverCrosses,
  Unreachable,
  ZeroOptimal,
  InvalidParam,
  DegenerateFlat,
  DisconnectedInput,
  MixedDimensionality,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is stable
/// and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tseek
