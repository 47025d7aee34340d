#pragma once

#include <stdexcept>
#include <string>

namespace strobe {

// Base for everything the library throws on a violated contract.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Label or dimension mismatch between operands.
class LayoutError : public Error {
public:
    using Error::Error;
};

// Duplicate factor labels when joining spaces.
class CompositionError : public LayoutError {
public:
    using LayoutError::LayoutError;
};

// Out-of-range physical parameter (temperature, duration, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Engine description that violates a structural invariant.
class SpecError : public Error {
public:
    using Error::Error;
};

// A result that should hold by construction did not (e.g. a channel output
// that is no longer a state).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual, long cycles)
        : Error(what), last_residual_(last_residual), cycles_(cycles) {}

    double last_residual() const noexcept { return last_residual_; }
    long cycles() const noexcept { return cycles_; }

private:
    double last_residual_;
    long cycles_;
};

// The composed channel has more than one fixed point.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// No unique steady state of the affine observable map.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent JSON configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace strobe
