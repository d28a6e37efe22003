#pragma once

#include "kckf/quaternion.hpp"
#include "kckf/types.hpp"

namespace kckf {

/// Skew-style 4x4 rate matrix Omega(w) of quaternion kinematics:
///
///   [  0  -wx  -wy  -wz ]
///   [ wx    0   wz  -wy ]
///   [ wy  -wz    0   wx ]
///   [ wz   wy  -wx    0 ]
///
/// The result is skew-symmetric for every input.
Mat4 omega_matrix(const AngularRate& w);

/// First-order state transition F = I + (dt/2) * Omega(w).
/// Throws std::invalid_argument when dt <= 0.
Mat4 transition_matrix(const AngularRate& w, double dt);

/// Noise input matrix G mapping body-rate noise into quaternion space:
/// G = (dt/2) * [[q1, q2, q3], [q0, q3, -q2], [-q3, -q0, q1], [q2, -q1, -q0]].
/// Its columns are signed permutations of q, so G^T q = 0 identically.
/// Throws std::invalid_argument when dt <= 0.
Mat4x3 noise_input_matrix(const Quaternion& q, double dt);

/// Process noise covariance Q = G (gyro_var * I3) G^T. Symmetric PSD with
/// rank <= 3; q itself spans the null space.
/// Throws std::invalid_argument when gyro_var < 0.
Mat4 process_noise_cov(const Quaternion& q, double dt, double gyro_var);

/// Direction cosine matrix rotating global-frame vectors into the sensor
/// frame. Requires ||q|| within 1e-6 of one (filter steps denormalize the
/// estimate slightly between renormalizations; more than that is a bug).
Mat3 dcm(const Quaternion& q);

}  // namespace kckf
