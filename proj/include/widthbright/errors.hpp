#pragma once

#include <stdexcept>
#include <string>

namespace wb {

// Malformed or inconsistent input: bad dimensions, odd n_phi, wrong parity.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation needs a certified convex body (or a feasible start) and
// did not get one.
class NotConvexError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Something that should not fail numerically did: singular normal
// equations, degenerate mesh, generator that could not reach its target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wb
