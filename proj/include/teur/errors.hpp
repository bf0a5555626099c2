#pragma once

#include <stdexcept>
#include <string>

namespace teur {

/// Thrown when an argument violates an operation's precondition
/// (dimension mismatch, out-of-range time, malformed instance, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown by the propagator when the state norm drifts beyond tolerance.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Campaign or run configuration that cannot be honoured.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace teur
