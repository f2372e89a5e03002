#pragma once

#include <stdexcept>
#include <string>

namespace cspec {

// Bad parameters or a request that makes no sense for the chosen family.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is valid but too large to compute exhaustively.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical or structural failure inside a computation.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when I - G(D) is singular, which happens exactly at spectral-line
// frequencies of a cyclostationary stream.
class DiscreteFrequencyError : public ComputationError {
public:
    explicit DiscreteFrequencyError(const std::string& what) : ComputationError(what) {}
};

}  // namespace cspec
