#pragma once

#include <stdexcept>
#include <string>

namespace symtest {

// Base class for all library-level failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the skewness parameter is too large for the Edgeworth
// construction: no admissible truncation point exists, or the resulting
// density would go negative.
struct XiTooLarge : Error {
    using Error::Error;
};

// Sample has no usable variation (e.g. all deviations zero).
struct DegenerateSample : Error {
    using Error::Error;
};

// Score derivative requested for a family whose score is not differentiable.
struct UnsupportedScoreDerivative : Error {
    using Error::Error;
};

// Requested moment does not exist for the family (heavy tails).
struct MomentDoesNotExist : Error {
    using Error::Error;
};

// A cross-information integral fails its moment/tail condition.
struct DivergentIntegral : Error {
    using Error::Error;
};

// Empirical variance estimate came out non-positive.
struct NonPositiveVariance : Error {
    using Error::Error;
};

struct ZeroDenominator : Error {
    using Error::Error;
};

struct ZeroShift : Error {
    using Error::Error;
};

// Malformed user input (CLI strings, config files).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace symtest
