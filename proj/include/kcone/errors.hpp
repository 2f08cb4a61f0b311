#pragma once

#include <stdexcept>

namespace kcone {

// Thrown when an operation's structural precondition or postcondition fails
// (degeneracy shape, normalization, identity residual above tolerance).
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kcone
