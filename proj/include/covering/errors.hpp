#pragma once

#include <stdexcept>

namespace covering {

// A requested operation is undefined for the given space kind.
struct UnsupportedOperation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data violates a structural invariant (asymmetric matrix, broken
// triangle inequality, bad weights); the message names the offender.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The point cloud cannot be covered from the given candidate set; the
// message names an uncoverable point.
struct InfeasibleDiscretization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace covering
