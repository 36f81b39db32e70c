#pragma once

#include <stdexcept>
#include <string>

namespace adhesion {

/// Raised when a configuration file cannot be parsed or contains unknown keys.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Raised when a parsed scenario violates a domain invariant. Collects every
/// violation so the user sees them all at once.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Raised by the plant integrator when a state component stops being finite.
class NonFiniteState : public std::runtime_error {
public:
    explicit NonFiniteState(double t)
        : std::runtime_error("non-finite simulation state at t=" + std::to_string(t) + " s"),
          t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

class EmptyInput : public std::runtime_error {
public:
    explicit EmptyInput(std::string msg) : std::runtime_error(std::move(msg)) {}
};

} // namespace adhesion
