#pragma once

#include <stdexcept>
#include <string>

namespace frobstab {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (CLI exit 2).
class InputError : public Error {
public:
    using Error::Error;
};

// A profile was required in HN-normal form (strictly decreasing slopes)
// but was not; callers should normalize() first.
class NotNormalizedError : public InputError {
public:
    using InputError::InputError;
};

// Slope/instability query against a zero sheaf (T^l with l > r(p-1)),
// where the quantities are undefined.
class ZeroSheafError : public InputError {
public:
    using InputError::InputError;
};

// A stated hypothesis of the underlying result does not hold; the formula
// is still evaluable behind an explicit force flag (CLI exit 3).
class HypothesisError : public Error {
public:
    using Error::Error;
};

// The two-block filtration is not slope-ordered, so it is not an HN
// filtration; never silently reordered.
class SlopeOrderError : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

// Breach of an internal invariant; never expected (CLI exit 1).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace frobstab
