#pragma once

#include <stdexcept>
#include <string>

namespace homog {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition or validation failure (bad input, wrong regime, chart blow-up).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operands of different scalar kinds were combined.
class ScalarKindMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical procedure failed to converge within its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace homog
