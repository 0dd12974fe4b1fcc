#pragma once

#include <stdexcept>

namespace cdd {

// Thrown when an iterative numerical routine cannot meet its tolerance
// (eigenvalue iteration stall, quadrature depth exhaustion, integrator
// invariant drift).  Domain errors on inputs throw std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cdd
