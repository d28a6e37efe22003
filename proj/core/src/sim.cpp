#include "kckf/sim.hpp"

#include "kckf/kinematics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kckf::sim {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

AngularRate profile_rate(const TrajectoryProfile& p, double t) {
  switch (p.kind) {
    case TrajectoryProfile::Kind::kStationary:
      return {};
    case TrajectoryProfile::Kind::kConstantRate:
      return p.constant_rate;
    case TrajectoryProfile::Kind::kWalk: {
      const double step = 2.0 * M_PI * p.walk_step_hz * t;
      const double sway = 2.0 * M_PI * p.walk_yaw_hz * t;
      return {p.walk_roll_amp * std::sin(step),
              p.walk_pitch_amp * std::sin(step + 0.5 * M_PI),
              p.walk_yaw_amp * std::sin(sway)};
    }
  }
  return {};
}

}  // namespace

SensorNoiseModel SensorNoiseModel::mtw2_at(double rate_hz) {
  const double root_bw = std::sqrt(rate_hz / 2.0);
  SensorNoiseModel m;
  m.gyro_std = 0.01 * kDegToRad * root_bw;  // 0.01 deg/s/sqrt(Hz)
  m.acc_std = 200e-6 * root_bw;             // 200 ug/sqrt(Hz), g units
  m.mag_std = 0.2e-3 / 0.5 * root_bw;       // 0.2 mGauss/sqrt(Hz) over 0.5 G
  return m;
}

std::vector<TruthSample> generate_trajectory(const TrajectoryProfile& p) {
  if (!(p.rate_hz > 0.0) || !(p.duration_s > 0.0)) {
    throw std::invalid_argument(
        "generate_trajectory: rate and duration must be positive");
  }
  const double dt = 1.0 / p.rate_hz;
  const auto count = static_cast<std::size_t>(p.duration_s * p.rate_hz) + 1;

  std::vector<TruthSample> truth;
  truth.reserve(count);
  truth.push_back({0.0, Quaternion{}, profile_rate(p, 0.0)});
  for (std::size_t k = 1; k < count; ++k) {
    const double t = static_cast<double>(k) / p.rate_hz;
    const AngularRate w = profile_rate(p, t);
    TruthSample s;
    s.t = t;
    s.omega = w;
    s.q = normalize(state_transition(truth.back().q, w, dt));
    truth.push_back(s);
  }
  return truth;
}

std::vector<ImuSample> synthesize_measurements(
    const std::vector<TruthSample>& truth, const SensorNoiseModel& noise,
    double magnetic_dip_deg, std::uint64_t seed) {
  if (noise.gyro_std < 0.0 || noise.acc_std < 0.0 || noise.mag_std < 0.0) {
    throw std::invalid_argument(
        "synthesize_measurements: noise stds must be >= 0");
  }
  const double dip = magnetic_dip_deg * kDegToRad;
  const Vec3 mag_global{std::cos(dip), 0.0, std::sin(dip)};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto noise3 = [&](double std_dev) {
    // Always consume three draws so channel streams stay aligned even when
    // one std is zero.
    Vec3 n{gauss(rng), gauss(rng), gauss(rng)};
    return Vec3(std_dev * n);
  };

  std::vector<ImuSample> samples;
  samples.reserve(truth.size());
  for (const TruthSample& ts : truth) {
    const Mat3 C = dcm(ts.q);
    ImuSample s;
    s.t = ts.t;
    s.gyro = AngularRate::from_vec(ts.omega.vec() + noise.gyro_bias +
                                   noise3(noise.gyro_std));
    s.acc = C * gravity_reference() + noise3(noise.acc_std);
    s.mag = C * mag_global + noise3(noise.mag_std);
    samples.push_back(s);
  }
  return samples;
}

void inject_external_acceleration(std::vector<ImuSample>& samples,
                                  const ExternalAccelBurst& burst) {
  const double end = burst.start_s + burst.duration_s;
  for (ImuSample& s : samples) {
    if (s.t >= burst.start_s && s.t < end) {
      s.acc += burst.accel;
    }
  }
}

}  // namespace kckf::sim
