#pragma once

#include <stdexcept>

namespace limlab {

/// Bad argument values or violated type invariants.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Calibration data cannot be fitted (too few points, degenerate geometry).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File-system or parse failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace limlab
