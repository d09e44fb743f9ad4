#pragma once

#include <stdexcept>
#include <string>

namespace dhlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed interval or argument range (e.g. lo > hi).
class RangeError : public Error {
public:
    using Error::Error;
};

/// A prime table does not cover the range a sum or integral needs.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Arc parameters cannot support the requested classification (P/X >= R).
class DegenerateParams : public Error {
public:
    using Error::Error;
};

/// Requested quadrature step is coarser than the Nyquist-safe bound.
class BandwidthError : public Error {
public:
    using Error::Error;
};

/// All four coefficients share a sign; the lower-bound construction is empty.
class SignPatternError : public Error {
public:
    using Error::Error;
};

/// Problem size exceeds what an exhaustive oracle may attempt.
class ScaleError : public Error {
public:
    using Error::Error;
};

/// A coefficient-times-square value left the range where the extended
/// precision form evaluation is trustworthy.
class OverflowGuard : public Error {
public:
    using Error::Error;
};

} // namespace dhlab
