#pragma once

#include <stdexcept>
#include <string>

namespace preho {

// Base class for every error raised by the library. `kind()` is a short
// machine-readable tag used in the CLI's error JSON.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "parse"; }
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error("invalid '" + field + "': " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }
    const char* kind() const noexcept override { return "validation"; }

private:
    std::string field_;
};

// A (ue, slot) pair has no admissible satellite, or a plan uses a satellite
// outside the visibility set.
class InfeasibleError : public Error {
public:
    InfeasibleError(int ue, int slot, const std::string& what)
        : Error(what + " (ue " + std::to_string(ue) + ", slot " + std::to_string(slot) + ")"),
          ue_(ue), slot_(slot) {}

    int ue() const noexcept { return ue_; }
    int slot() const noexcept { return slot_; }
    const char* kind() const noexcept override { return "infeasible"; }

private:
    int ue_;
    int slot_;
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

class ConvergenceError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "convergence"; }
};

class CertificateError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "certificate"; }
};

}  // namespace preho
