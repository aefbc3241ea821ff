#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace decoh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a physical domain restriction (non-positive mass, ...).
class DomainError : public Error {
public:
    DomainError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Model evaluation produced a non-finite value at one of its resonance terms.
class SingularityError : public Error {
public:
    SingularityError(std::size_t resonance_index, double field)
        : Error("scattering model singular at field " + std::to_string(field) +
                " G (resonance " + std::to_string(resonance_index) + ")"),
          index_(resonance_index), field_(field) {}
    std::size_t resonance_index() const noexcept { return index_; }
    double field() const noexcept { return field_; }

private:
    std::size_t index_;
    double field_;
};

/// Negative loss part where the a = alpha - i beta, beta >= 0 convention requires otherwise.
class ConventionError : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class AccuracyError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class BracketError : public Error {
public:
    using Error::Error;
};

class GridError : public Error {
public:
    using Error::Error;
};

class InconsistentMeasurement : public Error {
public:
    using Error::Error;
};

}  // namespace decoh
