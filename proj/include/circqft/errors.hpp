#pragma once

#include <stdexcept>
#include <string>

namespace circqft {

// Base for every error the library raises on purpose. The CLI maps the
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input matrix is not Hermitian (or not unitary) within tolerance.
class SymmetryError : public Error {
public:
    using Error::Error;
};

// Two eigenvalues collide, or branch matching became ambiguous.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// Iterative procedure ran out of its step or iteration budget.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// Linear ion chain is not a stable configuration (zig-zag threshold crossed)
// or the beatnote sits on a phonon resonance.
class InstabilityError : public Error {
public:
    using Error::Error;
};

// Malformed or out-of-contract user configuration; carries the field name.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace circqft
