#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kvis {

enum class ErrorCode {
  kParseError,
  kInvalidPolygon,
  kInvalidArgument,
  kDegenerate,
  kEmptyResult,
  kNotATree,
  kRelocationFailed,
  kPlacementUncertified,
  kGenFailed,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure the library reports carries one of
/// the codes above so callers (and the CLI exit-status mapping) can branch on
/// it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kvis
