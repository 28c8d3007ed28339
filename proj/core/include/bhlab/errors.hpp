#pragma once

#include <stdexcept>
#include <string>

namespace bhlab {

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but exceeds a configured size budget
// (tensor volume, vertex enumeration bits, subset enumeration). Exit code 3.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A computed quantity is not representable as a finite double.
class NumericError : public std::overflow_error {
 public:
  explicit NumericError(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace bhlab
