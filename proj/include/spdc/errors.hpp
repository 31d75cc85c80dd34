#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

/// Input outside the validity range of a model or operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested mode is evanescent (transverse momentum exceeds |k|).
class KinematicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quasi-phase matching cannot be reached for the requested configuration.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Special-function argument outside the range where the documented accuracy holds.
class AccuracyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Config or data file syntax/validation problem. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(format(source, line, what)), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }
  int line_;
};

/// Map extent does not contain the feature being measured.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spdc
