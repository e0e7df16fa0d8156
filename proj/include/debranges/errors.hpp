#pragma once

#include <stdexcept>
#include <string>

namespace debranges {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Function representations.
class MalformedFunction : public Error { using Error::Error; };
class ConfigurationError : public Error { using Error::Error; };
class NotNormalizable : public Error { using Error::Error; };
class HypothesisViolation : public Error { using Error::Error; };

// Space-level operations.
class InconclusiveIntegral : public Error { using Error::Error; };
class UnsupportedSpace : public Error { using Error::Error; };
class DegenerateKernel : public Error { using Error::Error; };
class SpectrumPoint : public Error { using Error::Error; };
class InvalidEigenvalue : public Error { using Error::Error; };
class InvalidSeed : public Error { using Error::Error; };

/// Root scan could not resolve the zeros of s_beta at the configured grid density.
class RefineNeeded : public Error {
public:
    RefineNeeded(const std::string& what, double location)
        : Error(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

// Criterion.
class InconclusiveProduct : public Error { using Error::Error; };
class InvalidSpectra : public Error { using Error::Error; };

// Jacobi matrices.
class NumericError : public Error { using Error::Error; };

// Input parsing (CLI).
class ParseError : public Error { using Error::Error; };

}  // namespace debranges
