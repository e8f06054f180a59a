#pragma once

#include <stdexcept>
#include <string>

namespace paw {

enum class ErrorCode {
  InvalidArgument,
  MalformedRational,
  NoOddOverEvenForm,
  NotAdmissible,
  UnsupportedIndex,
  ZeroState,
  DegenerateTheta,
  EOutOfRange,
  Parse,
};

const char* to_string(ErrorCode code);

// Single exception type; callers dispatch on code() (the CLI maps codes to exit statuses).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace paw
