#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcs {

enum class ErrorCategory {
  InvalidField,
  Precondition,
  Coverage,
  Escape,
  NotImplemented,
  Unwrap,
  Node,
  Extraction,
  Propagation,
  Unitarity,
  Diagnostics,
  Config,
};

std::string_view to_string(ErrorCategory category);

/// Every module reports failures through this one exception type; the
/// category drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(std::string(to_string(category)) + ": " + message),
        category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace gcs
