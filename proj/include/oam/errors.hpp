#pragma once

#include <stdexcept>
#include <string>

namespace oam {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid physical or mathematical input (parameter out of its domain,
/// unconcentratable state, mismatched bases, ...). CLI maps this to exit 3.
struct DomainError : Error {
    using Error::Error;
};

/// normalize() called on a state with vanishing norm.
struct ZeroNormError : DomainError {
    using DomainError::DomainError;
};

/// Objects indexed by different mode spectra were combined.
struct DimensionMismatchError : DomainError {
    using DomainError::DomainError;
};

/// Visibility requested for an all-zero scan curve.
struct DegenerateCurveError : DomainError {
    using DomainError::DomainError;
};

/// Noise calibration target exceeds the ideal (noiseless) visibility.
struct UnreachableTargetError : DomainError {
    using DomainError::DomainError;
};

/// Dip refinement found the scan minimum at the edge of the sampled range.
struct BoundaryMinimumError : DomainError {
    using DomainError::DomainError;
};

/// Configuration file / CLI input problems. CLI maps this to exit 2.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace oam
