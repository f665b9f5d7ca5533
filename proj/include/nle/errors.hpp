#pragma once

#include <stdexcept>
#include <string>

namespace nle {

// Root of the toolkit error hierarchy. The CLI maps the three branches onto
// exit codes: validation -> 1, numerical -> 2, I/O -> 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

// Lattice spec or geometry parameters out of range.
class InvalidSpecError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

// Empty regions, index out of range, overlapping regions.
class RegionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

// Experiment configuration problems (bad JSON, empty grids, unknown figure).
class ConfigError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

// Working precision too low for the requested computation: inverse residual
// out of tolerance, non-positive restricted blocks, spectrum below the
// clampable band.
class PrecisionError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Quadrature refinement or eigensolver sweep limit exhausted.
class ConvergenceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// No connected extremal surface exists for the requested strip width.
class NoConnectedSurfaceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// On-disk kernel cache entry failed its checksum; callers rebuild.
class CacheCorruptionError : public IoError {
  public:
    using IoError::IoError;
};

}  // namespace nle
