#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dqw {

using cd = std::complex<double>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<cd, 6, 6>;
using Vec6 = Eigen::Matrix<cd, 6, 1>;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

// Bad caller-supplied value. The CLI maps this family to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameter outside its documented domain.
struct RangeError : InputError {
  using InputError::InputError;
};

// (x, y) pair off the coin-class constraint curve; carries the residual.
struct ConstraintError : InputError {
  double residual;
  ConstraintError(const std::string& msg, double r) : InputError(msg), residual(r) {}
};

// File or stream failure. CLI exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact-integer overflow (lcm chains). CLI exit code 4.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric kernel failed its internal tolerance. CLI exit code 4.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Map an angle into (-pi, pi].
double normalize_angle(double theta);

}  // namespace dqw
