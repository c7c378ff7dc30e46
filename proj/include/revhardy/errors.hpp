#pragma once

#include <stdexcept>
#include <string>

namespace revhardy {

// Base class for everything this library throws on its own behalf.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: intervals out of range, non-monotone breakpoints, ...
struct DomainError : Error {
    using Error::Error;
};

// A cumulative weighted norm is infinite at an interior point.
struct NonAdmissibleWeight : Error {
    using Error::Error;
};

// A Stieltjes integrator reaches an infinite plateau where the integrand
// does not vanish, so the integral is undefined.
struct ConventionViolation : Error {
    using Error::Error;
};

// The refinement budget was exhausted before the enclosure got tight enough.
struct ToleranceNotMet : Error {
    using Error::Error;
};

// A sequence required to be almost geometric failed the detection test.
struct NotAlmostGeometric : Error {
    using Error::Error;
};

// A discretizing sequence would need more points than allowed.
struct TruncationOverflow : Error {
    using Error::Error;
};

// Radon-Nikodym reduction attempted against a measure that does not
// dominate; the message names the witnessing set.
struct NotAbsolutelyContinuous : Error {
    using Error::Error;
};

}  // namespace revhardy
