#pragma once

#include <stdexcept>
#include <string>

namespace itp {

// Errors carry a stable machine-readable code next to the human message.
// InputError: the input file or configuration itself is bad (CLI exit 1).
// PipelineError: inputs parsed but an operation cannot proceed (CLI exit 2).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class InputError : public Error {
public:
  using Error::Error;
};

class PipelineError : public Error {
public:
  using Error::Error;
};

} // namespace itp
