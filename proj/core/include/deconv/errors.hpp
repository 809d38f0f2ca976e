#pragma once

#include <stdexcept>

namespace deconv {

// Base class for everything this library throws. The CLI maps subclasses to
// exit codes: input problems (IoError, ShapeError, DomainError) -> 2,
// numerical failures during a run (StabilityError, DivergenceError,
// StepSizeError) -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or unreadable file.
struct IoError : Error {
    using Error::Error;
};

/// Dimension or channel-count violation.
struct ShapeError : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// A fixed-point denominator lost positivity.
struct StabilityError : Error {
    using Error::Error;
};

/// Non-finite or nonpositive iterate detected during a run.
struct DivergenceError : Error {
    using Error::Error;
};

/// Explicit descent step left the admissible range; reduce the time step.
struct StepSizeError : Error {
    using Error::Error;
};

}  // namespace deconv
