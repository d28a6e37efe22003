#include "kckf/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace kckf {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;
constexpr double kDegToRad = M_PI / 180.0;

double wrap_half_open_deg(double deg) {
  // (-180, 180]
  while (deg > 180.0) deg -= 360.0;
  while (deg <= -180.0) deg += 360.0;
  return deg;
}

}  // namespace

double Quaternion::norm() const {
  return std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
}

bool Quaternion::is_unit(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

Quaternion normalize(const Quaternion& q) {
  const double n = q.norm();
  if (n <= 1e-12) {
    throw DegenerateStateError("quaternion norm is numerically zero");
  }
  return {q.q0 / n, q.q1 / n, q.q2 / n, q.q3 / n};
}

EulerAngles quat_to_euler(const Quaternion& q) {
  // Entries of the global-to-sensor DCM needed for the ZYX decomposition.
  const double c02 = 2.0 * (q.q1 * q.q3 - q.q0 * q.q2);
  const double sin_pitch = std::clamp(-c02, -1.0, 1.0);

  EulerAngles e;
  e.pitch = std::asin(sin_pitch) * kRadToDeg;

  if (std::abs(sin_pitch) >= 1.0 - 1e-15) {
    // Gimbal lock: only roll - yaw (or roll + yaw) is observable. Report
    // roll = 0 and fold everything into yaw.
    const double c10 = 2.0 * (q.q1 * q.q2 - q.q0 * q.q3);
    const double c11 = q.q0 * q.q0 - q.q1 * q.q1 + q.q2 * q.q2 - q.q3 * q.q3;
    e.roll = 0.0;
    e.yaw = wrap_half_open_deg(std::atan2(-c10, c11) * kRadToDeg);
    return e;
  }

  const double c12 = 2.0 * (q.q2 * q.q3 + q.q0 * q.q1);
  const double c22 = q.q0 * q.q0 - q.q1 * q.q1 - q.q2 * q.q2 + q.q3 * q.q3;
  const double c01 = 2.0 * (q.q1 * q.q2 + q.q0 * q.q3);
  const double c00 = q.q0 * q.q0 + q.q1 * q.q1 - q.q2 * q.q2 - q.q3 * q.q3;

  e.roll = wrap_half_open_deg(std::atan2(c12, c22) * kRadToDeg);
  e.yaw = wrap_half_open_deg(std::atan2(c01, c00) * kRadToDeg);
  return e;
}

Quaternion euler_to_quat(const EulerAngles& e) {
  const double hr = 0.5 * e.roll * kDegToRad;
  const double hp = 0.5 * e.pitch * kDegToRad;
  const double hy = 0.5 * e.yaw * kDegToRad;
  const double cr = std::cos(hr), sr = std::sin(hr);
  const double cp = std::cos(hp), sp = std::sin(hp);
  const double cy = std::cos(hy), sy = std::sin(hy);

  return {cr * cp * cy + sr * sp * sy,
          sr * cp * cy - cr * sp * sy,
          cr * sp * cy + sr * cp * sy,
          cr * cp * sy - sr * sp * cy};
}

double angular_distance_deg(const Quaternion& a, const Quaternion& b) {
  const Quaternion ua = normalize(a);
  const Quaternion ub = normalize(b);
  const double dot = std::abs(ua.q0 * ub.q0 + ua.q1 * ub.q1 + ua.q2 * ub.q2 +
                              ua.q3 * ub.q3);
  return 2.0 * std::acos(std::min(dot, 1.0)) * kRadToDeg;
}

}  // namespace kckf
