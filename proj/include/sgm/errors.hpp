#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgm {

// Bad user-supplied data: malformed files, inconsistent graphs or seeds,
// invalid configuration values. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& file = {})
      : InputError((file.empty() ? "line " : file + ":") + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class SizeMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class SeedError : public InputError {
 public:
  using InputError::InputError;
};

class NothingToMatchError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace sgm
