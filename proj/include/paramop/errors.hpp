#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paramop {

/// Base class for all paramop errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violations: bad dimensions, non-finite input, empty grids.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// An operation needs data the family does not carry (missing derivative,
/// missing Frechet derivative).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// A linear operator is singular to tolerance. Carries the parameter value
/// at which the singularity was met, when known.
class SingularOperatorError : public Error {
public:
    SingularOperatorError(const std::string& what, std::optional<std::complex<double>> k = {})
        : Error(what), k_context(k) {}

    std::optional<std::complex<double>> k_context;
};

/// Jacobian (Frechet derivative) singular at an iterate of a nonlinear solve.
class SingularJacobianError : public SingularOperatorError {
public:
    SingularJacobianError(const std::string& what, std::optional<std::complex<double>> k, int iterate)
        : SingularOperatorError(what, k), iteration(iterate) {}

    int iteration;
};

/// The Nystrom system I - B(k) is singular: 1 is in the spectrum of B(k).
class CharacteristicValueError : public SingularOperatorError {
public:
    using SingularOperatorError::SingularOperatorError;
};

/// Iteration budget exhausted. Carries the best residual reached and the
/// residual history for diagnosis.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double best, std::vector<double> history = {})
        : Error(what), best_residual(best), residual_history(std::move(history)) {}

    double best_residual;
    std::vector<double> residual_history;
};

/// A computed quantity failed an internal consistency bound.
class NumericalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Registry or config lookup with no match; the message lists candidates.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the operator's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Config parse/validation failure; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while writing sweep outputs.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace paramop
