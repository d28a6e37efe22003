#pragma once

#include "kckf/types.hpp"

namespace kckf {

/// Unit attitude quaternion, scalar first: q = [q0 q1 q2 q3]^T.
/// The storage order matches the filter state vector, so conversions to and
/// from Vec4 are layout-preserving.
struct Quaternion {
  double q0 = 1.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  Vec4 vec() const { return {q0, q1, q2, q3}; }
  static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  double norm() const;
  bool is_unit(double tol = 1e-9) const;
};

/// Body-frame angular velocity in rad/s.
struct AngularRate {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static AngularRate from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

/// Intrinsic ZYX (yaw-pitch-roll) Euler angles in degrees.
/// roll, yaw in (-180, 180]; pitch in [-90, 90].
struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

/// Rescales q to unit norm. Throws DegenerateStateError when ||q|| <= 1e-12.
Quaternion normalize(const Quaternion& q);

/// ZYX intrinsic decomposition of the attitude. At |pitch| = 90 deg the
/// roll/yaw split is ambiguous; roll is reported as 0 and yaw absorbs the
/// remaining rotation.
EulerAngles quat_to_euler(const Quaternion& q);

/// Inverse of quat_to_euler (up to quaternion sign).
Quaternion euler_to_quat(const EulerAngles& e);

/// Rotation angle between the attitudes a and b, in degrees. Insensitive to
/// the sign ambiguity q ~ -q.
double angular_distance_deg(const Quaternion& a, const Quaternion& b);

}  // namespace kckf
