#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polerep {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Double-precision aliases used by the analysis and simulation layers.
using Complex = std::complex<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A(z) is numerically singular where an inverse was requested.
class SingularError : public Error {
public:
    SingularError(Complex z, double smallest_singular_value)
        : Error("pencil is singular at z = (" + std::to_string(z.real()) + ", " +
                std::to_string(z.imag()) + "), smallest singular value " +
                std::to_string(smallest_singular_value)),
          z(z),
          sigma_min(smallest_singular_value) {}
    Complex z;
    double sigma_min;
};

/// Pole classification or representation preconditions not met (not simple,
/// not second order, Assumption on the autoregressive law violated, ...).
class ClassificationError : public Error {
public:
    using Error::Error;
};

class AssumptionViolated : public ClassificationError {
public:
    AssumptionViolated(const std::string& what, std::vector<Complex> offending)
        : ClassificationError(what), points(std::move(offending)) {}
    std::vector<Complex> points;
};

/// Equivalent conditions disagreed numerically, or a quadrature failed its
/// convergence certificate.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace polerep
