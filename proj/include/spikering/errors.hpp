#pragma once

#include <stdexcept>
#include <string>

namespace spikering {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter / input validation failures (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

// Numerical failures (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};

struct NonSubcriticalExponent : ValidationError {
    using ValidationError::ValidationError;
};
struct ShootingFailed : NumericalError {
    using NumericalError::NumericalError;
};
struct QuadratureNotConverged : NumericalError {
    using NumericalError::NumericalError;
};
struct OutOfTabulatedRange : ValidationError {
    using ValidationError::ValidationError;
};
struct NoBracket : NumericalError {
    using NumericalError::NumericalError;
};
struct ZeroSeparation : ValidationError {
    using ValidationError::ValidationError;
};
struct SeparationTooSmall : ValidationError {
    using ValidationError::ValidationError;
};
struct DhatTooSmall : ValidationError {
    using ValidationError::ValidationError;
};
struct SingularBlock : NumericalError {
    using NumericalError::NumericalError;
};
struct NonZeroMeanForcing : ValidationError {
    using ValidationError::ValidationError;
};
struct GridTooCoarse : NumericalError {
    using NumericalError::NumericalError;
};
struct NotContracting : NumericalError {
    using NumericalError::NumericalError;
};
struct DecayViolated : NumericalError {
    using NumericalError::NumericalError;
};
struct InfimumViolated : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace spikering
