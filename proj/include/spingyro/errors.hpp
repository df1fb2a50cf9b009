#pragma once

#include <stdexcept>

namespace spingyro {

// Bad user-supplied parameters (CLI exit code 2).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical guarantee of the method failed to hold (CLI exit code 3).
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spingyro
