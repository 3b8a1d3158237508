#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liespline {

enum class ErrorCode {
  AngleNearPi,
  NotOrthonormal,
  NonFinite,
  GroupMismatch,
  UnsupportedOrder,
  NonmonotoneKnots,
  MissingVelocities,
  OutOfDomain,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code plus a diagnostic message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& message() const noexcept { return message_; }

  /// Same error with `context` prepended to the message.
  Error with_context(const std::string& context) const { return Error(code_, context + ": " + message_); }

  /// True for failures caused by the numbers rather than the input shape.
  bool numerical() const noexcept {
    return code_ == ErrorCode::AngleNearPi || code_ == ErrorCode::NonFinite;
  }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace liespline
