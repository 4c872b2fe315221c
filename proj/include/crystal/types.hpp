#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace crystal {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Integer coordinates of a translate in Z^d.
using Cell = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// The argument lies outside the region where a series or product converges.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Malformed lattice or spec configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

inline Complex dot(const RealVector& a, const ComplexVector& s)
{
    Complex acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * s[i];
    return acc;
}

inline ComplexVector complexify(const RealVector& sigma, const RealVector& t)
{
    ComplexVector s(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) s[i] = Complex{sigma[i], t[i]};
    return s;
}

inline ComplexVector complexify(const RealVector& sigma)
{
    return sigma.cast<Complex>();
}

}  // namespace crystal
