#pragma once

#include <stdexcept>
#include <string>

namespace tavis {

// Vector/matrix sizes do not match the sector.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// SectorParams or other inputs violate their invariants.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A rapidity sits at infinity where a finite value is required.
struct DivergedRootError : std::domain_error {
    using std::domain_error::domain_error;
};

// Poles of the Bethe equations: coincident rapidities or a rapidity at zero.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct CollisionError : SingularityError {
    using SingularityError::SingularityError;
};

struct ZeroRapidityError : SingularityError {
    using SingularityError::SingularityError;
};

// psi_0 vanishes, so the amplitudes do not define a finite Bethe product.
struct DegenerateAmplitudeError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Norm of the propagated state left the allowed band.
struct NormFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyAverageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tavis
