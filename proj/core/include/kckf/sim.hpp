#pragma once

#include "kckf/models.hpp"
#include "kckf/quaternion.hpp"
#include "kckf/types.hpp"

#include <cstdint>
#include <vector>

namespace kckf::sim {

/// Ground-truth attitude sample: the true rate omega has already been
/// integrated into q at time t.
struct TruthSample {
  double t = 0.0;
  Quaternion q;
  AngularRate omega;
};

/// Synthetic motion profile. `Walk` is a periodic multi-axis pattern shaped
/// after foot-mounted pedestrian data: roll/pitch oscillation at step
/// frequency plus a slower yaw sway.
struct TrajectoryProfile {
  enum class Kind { kStationary, kConstantRate, kWalk };

  Kind kind = Kind::kStationary;
  double duration_s = 10.0;
  double rate_hz = 100.0;

  // kConstantRate
  AngularRate constant_rate{};

  // kWalk
  double walk_step_hz = 1.0;
  double walk_roll_amp = 1.5;   // rad/s
  double walk_pitch_amp = 2.0;  // rad/s
  double walk_yaw_amp = 0.6;    // rad/s
  double walk_yaw_hz = 0.15;
};

/// Per-sample measurement noise. Densities from a MEMS datasheet convert to
/// these via std = density * sqrt(rate/2) (white noise over the Nyquist
/// band); see mtw2_at().
struct SensorNoiseModel {
  double gyro_std = 0.0;  // rad/s
  double acc_std = 0.0;   // normalized units
  double mag_std = 0.0;   // normalized units
  Vec3 gyro_bias = Vec3::Zero();  // rad/s

  /// Noise model of the Movella MTW2 tracker at the given sampling rate:
  /// gyro 0.01 deg/s/sqrt(Hz), accelerometer 200 ug/sqrt(Hz), magnetometer
  /// 0.2 mGauss/sqrt(Hz) normalized against a 0.5 Gauss field.
  static SensorNoiseModel mtw2_at(double rate_hz);
};

/// Integrates the profile's rate signal through the same first-order
/// quaternion kinematics the filters use (renormalizing each step), starting
/// from identity attitude. Timestamps sit on the exact k/rate grid.
std::vector<TruthSample> generate_trajectory(const TrajectoryProfile& profile);

/// Generates noisy MARG measurements for a truth sequence:
///   gyro = omega + bias + white noise,
///   acc  = C(q) * (0,0,1) + white noise,
///   mag  = C(q) * (cos dip, 0, sin dip) + white noise.
/// acc/mag are left unnormalized; preprocessing normalizes them.
/// Deterministic for a fixed seed.
std::vector<ImuSample> synthesize_measurements(
    const std::vector<TruthSample>& truth, const SensorNoiseModel& noise,
    double magnetic_dip_deg, std::uint64_t seed);

/// Stress-test helper: adds a constant sensor-frame acceleration disturbance
/// over [start_s, start_s + duration_s) to the accelerometer channel. The
/// measurement model does not account for external acceleration, so this
/// deliberately violates its assumptions.
struct ExternalAccelBurst {
  double start_s = 0.0;
  double duration_s = 0.0;
  Vec3 accel = Vec3::Zero();  // normalized units (multiples of g)
};

void inject_external_acceleration(std::vector<ImuSample>& samples,
                                  const ExternalAccelBurst& burst);

}  // namespace kckf::sim
