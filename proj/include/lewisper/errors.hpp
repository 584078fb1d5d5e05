#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lewisper {

// Base class for every library error.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-square or mismatched matrix dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// No N <= bound with mat_T^N = identity.
struct OrderNotFoundError : Error {
    using Error::Error;
};

// Argument outside the operation's domain (cut, wrong half-plane, sign, ...).
struct DomainError : Error {
    using Error::Error;
};

// Requested accuracy not attainable; carries the achievable-accuracy estimate.
struct PrecisionError : Error {
    double estimate;
    PrecisionError(const std::string& msg, double est) : Error(msg), estimate(est) {}
};

// Evaluation at (or numerically on) a pole.
struct PoleError : Error {
    using Error::Error;
};

// Integer argument outside the supported range.
struct RangeError : Error {
    using Error::Error;
};

// Series or integral does not converge for these parameters.
struct DivergenceError : Error {
    using Error::Error;
};

// Search found nothing in the window.
struct NotFoundError : Error {
    using Error::Error;
};

// Linear system too ill-conditioned; carries the condition estimate.
struct ConditioningError : Error {
    double condition;
    ConditioningError(const std::string& msg, double cond) : Error(msg), condition(cond) {}
};

// Parameter on the degenerate stratum (nu in 1/2 + Z, resonant exponent, ...).
struct DegenerateParameterError : Error {
    using Error::Error;
};

// Input fails the transfer fixed-point precondition.
struct NotEigenfunctionError : Error {
    using Error::Error;
};

// Discretization did not converge under basis doubling; carries both spectra.
struct ConvergenceError : Error {
    std::vector<std::complex<double>> spectrum_coarse;
    std::vector<std::complex<double>> spectrum_fine;
    ConvergenceError(const std::string& msg,
                     std::vector<std::complex<double>> coarse,
                     std::vector<std::complex<double>> fine)
        : Error(msg), spectrum_coarse(std::move(coarse)), spectrum_fine(std::move(fine)) {}
};

// Coset permutations violate the group relations.
struct ConstructionError : Error {
    using Error::Error;
};

// Malformed caller-supplied data (character table sizes, coefficient maps, ...).
struct InputError : Error {
    using Error::Error;
};

// Malformed file or config text.
struct ParseError : Error {
    using Error::Error;
};

// Converse-theorem hypothesis (functional-equation probe) failed.
struct ConverseHypothesisError : Error {
    using Error::Error;
};

}  // namespace lewisper
