#pragma once

#include <stdexcept>
#include <string>

namespace fsis {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A theorem's hypothesis is not met (c = 0 vs c != 0, b^(1/alpha) < 1, ...).
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration or input file.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration text; the message carries the line number.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Floating point range exceeded.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A series did not meet its stop rule within the allotted number of terms.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

/// Not enough coefficients to form an estimate.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Two trajectories live on different time grids.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Time stepping produced a non-finite value.
class NumericError : public Error {
public:
    NumericError(const std::string& what, long step) : Error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fsis
