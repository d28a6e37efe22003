#include "kckf/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace kckf {

Mat4 omega_matrix(const AngularRate& w) {
  Mat4 omega;
  omega <<  0.0, -w.x, -w.y, -w.z,
            w.x,  0.0,  w.z, -w.y,
            w.y, -w.z,  0.0,  w.x,
            w.z,  w.y, -w.x,  0.0;
  return omega;
}

Mat4 transition_matrix(const AngularRate& w, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("transition_matrix: dt must be positive");
  }
  return Mat4::Identity() + (0.5 * dt) * omega_matrix(w);
}

Mat4x3 noise_input_matrix(const Quaternion& q, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("noise_input_matrix: dt must be positive");
  }
  Mat4x3 g;
  g <<  q.q1,  q.q2,  q.q3,
        q.q0,  q.q3, -q.q2,
       -q.q3, -q.q0,  q.q1,
        q.q2, -q.q1, -q.q0;
  return (0.5 * dt) * g;
}

Mat4 process_noise_cov(const Quaternion& q, double dt, double gyro_var) {
  if (gyro_var < 0.0) {
    throw std::invalid_argument("process_noise_cov: variance must be >= 0");
  }
  const Mat4x3 g = noise_input_matrix(q, dt);
  return gyro_var * (g * g.transpose());
}

Mat3 dcm(const Quaternion& q) {
  if (std::abs(q.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("dcm: quaternion is not unit norm");
  }
  const double q0 = q.q0, q1 = q.q1, q2 = q.q2, q3 = q.q3;
  Mat3 c;
  c << q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3, 2.0 * (q1 * q2 + q0 * q3),
       2.0 * (q1 * q3 - q0 * q2),
       2.0 * (q1 * q2 - q0 * q3), q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3,
       2.0 * (q2 * q3 + q0 * q1),
       2.0 * (q1 * q3 + q0 * q2), 2.0 * (q2 * q3 - q0 * q1),
       q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3;
  return c;
}

}  // namespace kckf
