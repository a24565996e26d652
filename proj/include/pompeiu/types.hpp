#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pompeiu {

using Complex = std::complex<double>;

constexpr Complex kImaginaryUnit{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

/// Axis-aligned rectangle in the complex plane.
struct Box {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Complex z, double margin = 0.0) const {
        return z.real() >= xmin + margin && z.real() <= xmax - margin &&
               z.imag() >= ymin + margin && z.imag() <= ymax - margin;
    }
    static Box centered(Complex c, double half_width) {
        return {c.real() - half_width, c.real() + half_width,
                c.imag() - half_width, c.imag() + half_width};
    }
};

// Error taxonomy. Numerical failures derive from NumericalError so the CLI
// can map them to a single exit code.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : NumericalError {
    using NumericalError::NumericalError;
};
struct OnSpectrum : NumericalError {
    using NumericalError::NumericalError;
};
struct MissingOracle : NumericalError {
    using NumericalError::NumericalError;
};
struct BoxTooSmall : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateLevel : NumericalError {
    using NumericalError::NumericalError;
};
struct NonFiniteSample : NumericalError {
    using NumericalError::NumericalError;
};
struct SpectrumNotEnclosed : NumericalError {
    using NumericalError::NumericalError;
};
struct PointTooClose : NumericalError {
    using NumericalError::NumericalError;
};
struct ClustersOverlap : NumericalError {
    using NumericalError::NumericalError;
};
struct AtomOnBoundary : NumericalError {
    using NumericalError::NumericalError;
};
struct DisagreeOnSpectrum : NumericalError {
    using NumericalError::NumericalError;
};
struct NonConvergent : NumericalError {
    using NumericalError::NumericalError;
};
struct NonCauchy : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace pompeiu
