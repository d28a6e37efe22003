#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kckf {

// The state dimension is the quaternion dimension; it is fixed, so every
// matrix in the filter pipeline has a compile-time shape.
inline constexpr int kStateDim = 4;
inline constexpr int kObsDim = 6;
inline constexpr int kCubaturePointCount = 2 * kStateDim;

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat4x3 = Eigen::Matrix<double, 4, 3>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat6x4 = Eigen::Matrix<double, 6, 4>;
using Mat4x6 = Eigen::Matrix<double, 4, 6>;

/// Base for runtime numerical failures (as opposed to misuse, which is
/// reported via std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A covariance matrix stopped being positive definite and could not be
/// rescued by a jitter retry.
class CovarianceDegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The innovation covariance could not be factorized during an update.
class InnovationDegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A quaternion collapsed to (numerically) zero norm.
class DegenerateStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed input data; carries the 1-based line number and the offending
/// field name when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::string field,
             const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) +
                           (field.empty() ? "" : " (column '" + field + "')") +
                           ": " + what),
        source_(std::move(source)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

}  // namespace kckf
