#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levyps {

// Raised when an argument violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised before allocation when a requested ensemble would not fit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A numerical procedure could not produce a trustworthy result
// (singular system, non-positive-definite covariance, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration document errors carry the offending field and line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& what)
      : std::runtime_error(format(field, line, what)),
        field_(std::move(field)),
        line_(line),
        detail_(what) {}

  const std::string& field() const noexcept { return field_; }
  // 1-based line in the source document; 0 when unknown.
  int line() const noexcept { return line_; }
  // The message without the field/line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(const std::string& field, int line,
                            const std::string& what) {
    std::string out = "config";
    if (line > 0) out += " line " + std::to_string(line);
    if (!field.empty()) out += ", field \"" + field + "\"";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
  std::string detail_;
};

}  // namespace levyps
