// errors.hpp — error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace csslb {

// Inputs violate an operation's parameter contract.
struct RejectedParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Instance exceeds an enumeration/exhaustion cap; caller must downsize or sample.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative scheme left its stability region.
struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace csslb
