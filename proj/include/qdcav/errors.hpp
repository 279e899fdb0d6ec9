#pragma once

#include <stdexcept>
#include <string>

namespace qdcav {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid or inconsistent configuration. `field` names the offending key when known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message, std::string field = {})
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A requested feature lies outside the sampled energy range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Peak search found several equal global maxima.
class AmbiguityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A transition line fell outside the spectral grid.
class AccumulationError : public std::runtime_error {
public:
    AccumulationError(const std::string& message, double energy)
        : std::runtime_error(message), energy_(energy) {}

    double energy() const noexcept { return energy_; }

private:
    double energy_;
};

// Explicit time stepping left the probability simplex.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qdcav

namespace qdcav {

// Failure of one power point in a sweep; what() carries the inner message.
class SweepError : public std::runtime_error {
public:
    SweepError(double power, const std::string& inner)
        : std::runtime_error("at P = " + std::to_string(power) + ": " + inner), power_(power) {}

    double power() const noexcept { return power_; }

private:
    double power_;
};

}  // namespace qdcav
