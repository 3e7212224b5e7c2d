#pragma once

#include <stdexcept>
#include <string>

namespace bbg {

// Invalid parameters or malformed input (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The claimed global exponent does not annihilate an element.
class ExponentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An oracle used up its attempt budget without producing output
// (CLI exit code 3).
class StarvationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size or iteration guard was exceeded (CLI exit code 4).
class NumericGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbg
