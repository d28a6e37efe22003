#pragma once

#include "kckf/kinematics.hpp"
#include "kckf/quaternion.hpp"
#include "kckf/types.hpp"

#include <vector>

namespace kckf {

/// One nine-axis MARG measurement. After preprocessing, acc and mag are unit
/// norm (or the sample is flagged invalid); gyro is always raw rad/s.
struct ImuSample {
  double t = 0.0;  // seconds, strictly increasing within a dataset
  AngularRate gyro;
  Vec3 acc = Vec3::Zero();
  Vec3 mag = Vec3::Zero();
  bool valid = true;
};

/// Decomposition of the measured magnetic field against gravity:
/// north (horizontal) and down (vertical) components of the unit reference
/// vector (north, 0, down) in the global frame.
struct MagneticReference {
  double north = 1.0;  // m_N, >= 0
  double down = 0.0;   // m_D
};

/// Sensor noise variances driving Q (gyro) and R (accelerometer and
/// magnetometer).
struct NoiseParams {
  double gyro_var = 1e-3;  // (rad/s)^2
  double acc_var = 1e-2;   // normalized units^2
  double mag_var = 1e-2;   // normalized units^2
};

/// Gravity reference direction in the global frame (z-up convention).
inline Vec3 gravity_reference() { return {0.0, 0.0, 1.0}; }

/// The 3-vector form (north, 0, down) of the magnetic reference.
inline Vec3 magnetic_reference_vector(const MagneticReference& r) {
  return {r.north, 0.0, r.down};
}

/// Process model f(q) = F(w, dt) * q. Linear in q; the result is not
/// renormalized here.
Quaternion state_transition(const Quaternion& q, const AngularRate& w,
                            double dt);

/// Builds the magnetic reference from a unit accelerometer/magnetometer pair:
/// down = acc . mag, north = sqrt(max(0, 1 - down^2)). The floor keeps
/// rounding from producing NaN when the vectors are (numerically) parallel.
/// Throws std::invalid_argument when either input is not unit norm.
MagneticReference magnetic_reference(const Vec3& acc, const Vec3& mag);

/// Observation model h(q): expected (acc, mag) readings for attitude q,
/// i.e. the gravity and magnetic reference vectors rotated into the sensor
/// frame. Evaluated in expanded polynomial form. Requires unit q.
Vec6 observe(const Quaternion& q, const MagneticReference& ref);

/// Unchecked h evaluation on a raw state vector. Cubature/sigma points are
/// generally far from unit norm, so the filters go through this entry point.
Vec6 observe_point(const Vec4& q, const MagneticReference& ref);

/// Measurement noise covariance R = blkdiag(acc_var * I3, mag_var * I3).
/// Throws std::invalid_argument on negative variances.
Mat6 measurement_noise_cov(const NoiseParams& p);

/// First-order exponential smoothing y_k = alpha * x_k + (1 - alpha) * y_{k-1}
/// applied to acc and mag before normalization. alpha = 1 disables smoothing.
/// The default corresponds to roughly a 3.5 Hz cutoff at 100 Hz sampling.
struct LowPassConfig {
  double alpha = 0.2;  // in (0, 1]
};

/// Stateful per-stream preprocessor: low-pass filters acc/mag, then
/// normalizes them to unit length. A sample whose filtered acc or mag has
/// (numerically) zero norm is passed through with valid = false so the
/// filter can fall back to a prediction-only step without losing the
/// timestamp grid. Not safe to share across concurrently processed streams.
class Preprocessor {
 public:
  explicit Preprocessor(LowPassConfig config = {});

  ImuSample process(const ImuSample& raw);

 private:
  LowPassConfig config_;
  bool primed_ = false;
  Vec3 acc_state_ = Vec3::Zero();
  Vec3 mag_state_ = Vec3::Zero();
};

/// Convenience batch form of Preprocessor.
std::vector<ImuSample> preprocess(const std::vector<ImuSample>& raw,
                                  LowPassConfig config = {});

}  // namespace kckf
