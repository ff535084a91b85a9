#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: dimension mismatch, asymmetric structure
/// constants, unknown catalog name, bad file contents.
class InputError : public Error {
public:
    using Error::Error;
};

/// The minimal polynomial of an element has non-real or unresolvably clustered
/// roots, so no idempotent frame can be built.
class DegenerateSpectrumError : public Error {
public:
    DegenerateSpectrumError(const std::string& what, double gap)
        : Error(what), gap_(gap) {}

    /// Smallest offending root separation (or imaginary part) that triggered the error.
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

/// A real function was applied outside its domain on some spectral value.
class DomainError : public Error {
public:
    DomainError(const std::string& what, double spectral_value)
        : Error(what), value_(spectral_value) {}

    double spectral_value() const noexcept { return value_; }

private:
    double value_;
};

/// An operation precondition (interior base point, properness, ...) does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A cone oracle violates its own invariants beyond the accepted tolerance.
class UnreliableOracleError : public Error {
public:
    using Error::Error;
};

/// A map sampled on the cone is not additive / positively homogeneous.
class NotAdditiveError : public Error {
public:
    using Error::Error;
};

/// A structural check failed (singular evaluation map, unfaithful representation,
/// runaway span closure).
class StructuralError : public Error {
public:
    using Error::Error;
};

}  // namespace conelab
