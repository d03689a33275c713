#pragma once

#include <stdexcept>
#include <string>

namespace optospec {

/// Parameter outside the domain of a closed-form expression (e.g. the
/// squeeze logarithm argument is non-positive).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computed quantity is not finite, or a series/iteration failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncation (Fock space or state tail) is too small for the requested accuracy.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Post-condition check failed: unit integral, norm drift, inconsistent inference.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input (command line, config, CSV content).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace optospec
