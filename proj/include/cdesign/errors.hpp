#pragma once

#include <stdexcept>
#include <string>

namespace cdesign {

/// Instance parameters that do not describe a well-formed instance
/// (missing names, out-of-range values, inconsistent BTD arithmetic).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix whose shape does not match the instance. Kept apart from an
/// invalid-design verdict so callers can tell solver bugs from misses.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix text or manifest. `line()` is 1-based; 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Bad search or tuning configuration (temperatures, rates, grid sizes).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cdesign
