#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

// Every failure the library reports. The numeric values are mirrored by
// cm_status in cantor_meter.h and must stay in sync with it.
enum class ErrorCode : int {
  InvalidArgument = 1,
  ParseError = 2,
  NegativeMeasure = 3,
  NotMonotone = 4,
  GridMismatch = 5,
  GridTooCoarse = 6,
  NotDominating = 7,
  DepthExhausted = 8,
  NoDnc2String = 9,
  WeightExceeded = 10,
  ReservedExhausted = 11,
  NoIncompressible = 12,
  NoRoom = 13,
  LayoutExhausted = 14,
  FullMeasure = 15,
  CapExceeded = 16,
  RootCapital = 17,
  GrowthViolation = 18,
  Uncovered = 19,
  NotFair = 20,
  Io = 21,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// The message carries the concrete witness (string, index, stage, line).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::InvalidArgument, message);
}

}  // namespace cantor
