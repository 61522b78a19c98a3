#pragma once

#include <stdexcept>
#include <string>

namespace qvx {

struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive truncation hit the hard cap before reaching the requested tolerance.
struct OverflowGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Winding loop too coarse: a single wrapped phase step exceeded the safe bound.
struct PhaseStepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field magnitude below the floor on the loop; phase undefined near a zero.
struct MagnitudeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateHerald : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qvx
