#include "kckf/models.hpp"

#include <cmath>
#include <stdexcept>

namespace kckf {

Quaternion state_transition(const Quaternion& q, const AngularRate& w,
                            double dt) {
  const Vec4 next = transition_matrix(w, dt) * q.vec();
  return Quaternion::from_vec(next);
}

MagneticReference magnetic_reference(const Vec3& acc, const Vec3& mag) {
  if (std::abs(acc.norm() - 1.0) > 1e-6 || std::abs(mag.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument(
        "magnetic_reference: acc and mag must be unit vectors");
  }
  MagneticReference ref;
  ref.down = acc.dot(mag);
  ref.north = std::sqrt(std::max(0.0, 1.0 - ref.down * ref.down));
  return ref;
}

Vec6 observe_point(const Vec4& q, const MagneticReference& ref) {
  const double q0 = q[0], q1 = q[1], q2 = q[2], q3 = q[3];
  const double mn = ref.north, md = ref.down;

  const double gx = 2.0 * (q1 * q3 - q0 * q2);
  const double gy = 2.0 * (q2 * q3 + q0 * q1);
  const double gz = q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3;

  Vec6 z;
  z << gx,
       gy,
       gz,
       (q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3) * mn + gx * md,
       2.0 * (q1 * q2 - q0 * q3) * mn + gy * md,
       2.0 * (q1 * q3 + q0 * q2) * mn + gz * md;
  return z;
}

Vec6 observe(const Quaternion& q, const MagneticReference& ref) {
  if (std::abs(q.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("observe: quaternion is not unit norm");
  }
  return observe_point(q.vec(), ref);
}

Mat6 measurement_noise_cov(const NoiseParams& p) {
  if (p.acc_var < 0.0 || p.mag_var < 0.0) {
    throw std::invalid_argument(
        "measurement_noise_cov: variances must be >= 0");
  }
  Mat6 r = Mat6::Zero();
  r.topLeftCorner<3, 3>() = p.acc_var * Mat3::Identity();
  r.bottomRightCorner<3, 3>() = p.mag_var * Mat3::Identity();
  return r;
}

Preprocessor::Preprocessor(LowPassConfig config) : config_(config) {
  if (!(config.alpha > 0.0) || config.alpha > 1.0) {
    throw std::invalid_argument("Preprocessor: alpha must be in (0, 1]");
  }
}

ImuSample Preprocessor::process(const ImuSample& raw) {
  if (!primed_) {
    acc_state_ = raw.acc;
    mag_state_ = raw.mag;
    primed_ = true;
  } else {
    const double a = config_.alpha;
    acc_state_ = a * raw.acc + (1.0 - a) * acc_state_;
    mag_state_ = a * raw.mag + (1.0 - a) * mag_state_;
  }

  ImuSample out = raw;
  const double acc_norm = acc_state_.norm();
  const double mag_norm = mag_state_.norm();
  if (acc_norm <= 1e-12 || mag_norm <= 1e-12) {
    out.acc = acc_state_;
    out.mag = mag_state_;
    out.valid = false;
    return out;
  }
  out.acc = acc_state_ / acc_norm;
  out.mag = mag_state_ / mag_norm;
  out.valid = true;
  return out;
}

std::vector<ImuSample> preprocess(const std::vector<ImuSample>& raw,
                                  LowPassConfig config) {
  Preprocessor pp(config);
  std::vector<ImuSample> out;
  out.reserve(raw.size());
  for (const ImuSample& s : raw) {
    out.push_back(pp.process(s));
  }
  return out;
}

}  // namespace kckf
