#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

/// Malformed user input: bad curve files, bad flags, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in prime field") {}
};

/// A bundle or cohomology group outside the twist-down class this library represents.
class NotRepresentable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace koszul
