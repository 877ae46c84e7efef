#pragma once

#include <stdexcept>
#include <string>

namespace parreg {

// Base class for all toolkit errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid problem description: bad dimensions, malformed operator, bad flags.
struct config_error : error {
    using error::error;
};

// A mathematically meaningful negative answer that aborts a computation,
// e.g. an improper root split or a non-parabolic operator handed to the
// evolution solver.
struct analytic_error : error {
    using error::error;
};

// The requested accuracy could not be reached at the given resolution.
struct accuracy_error : error {
    using error::error;
};

// No admissible integration contour (stable and unstable roots too close).
struct geometry_error : error {
    using error::error;
};

}  // namespace parreg
