#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cashtag {

// All recoverable failures raised by the library carry a short machine-readable
// code next to the human-readable message.  The CLI maps the code straight into
// its JSON error output, so codes are stable identifiers, not prose.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

inline Error make_error(const std::string &code, const std::string &message) {
  return Error(code, message);
}

}  // namespace cashtag
