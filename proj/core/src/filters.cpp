#include "kckf/filters.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace kckf {

namespace {

constexpr double kInvPointCount = 1.0 / kCubaturePointCount;

Mat4 symmetrized(const Mat4& m) { return 0.5 * (m + m.transpose()); }

/// Draws the 2N points S * e_i + center.
CubatureSet draw_points(const Mat4& sqrt_cov, const Vec4& center) {
  const CubatureSet& dirs = cubature_directions();
  CubatureSet points;
  for (int i = 0; i < kCubaturePointCount; ++i) {
    points[i] = sqrt_cov * dirs[i] + center;
  }
  return points;
}

FilterState prediction_only(const PredictionIntermediate& pred) {
  FilterState next;
  next.q = normalize(pred.q_pred);
  next.P = symmetrized(pred.P_pred);
  return next;
}

/// Kalman correction shared by the cubature update and the UKF update.
/// Solves against the Cholesky factorization of P_zz instead of inverting.
FilterState apply_gain(const Vec4& q_pred, const Mat4& P_pred, const Mat6& P_zz,
                       const Mat4x6& P_qz, const Vec6& innovation) {
  const Eigen::LLT<Mat6> llt(P_zz);
  if (llt.info() != Eigen::Success) {
    throw InnovationDegenerateError(
        "innovation covariance is not positive definite");
  }
  // K = P_qz * P_zz^-1, via P_zz K^T = P_qz^T.
  const Mat4x6 K = llt.solve(P_qz.transpose()).transpose();

  FilterState next;
  next.q = normalize(Quaternion::from_vec(q_pred + K * innovation));
  next.P = symmetrized(P_pred - K * P_zz * K.transpose());
  return next;
}

FilterState cubature_like_step(const FilterState& state,
                               const ImuSample& sample, const StepConfig& cfg,
                               bool rapid) {
  const Mat4 Q = process_noise_cov(state.q, cfg.dt, cfg.noise.gyro_var);
  const PredictionIntermediate pred =
      rapid ? kckf_predict(state, sample.gyro, cfg.dt, Q)
            : ckf_predict(state, sample.gyro, cfg.dt, Q);
  if (!sample.valid) {
    return prediction_only(pred);
  }
  const MagneticReference ref = magnetic_reference(sample.acc, sample.mag);
  Vec6 z;
  z << sample.acc, sample.mag;
  return cubature_update(pred, z, measurement_noise_cov(cfg.noise), ref,
                         cfg.mode);
}

}  // namespace

Mat4 cholesky_sqrt(const Mat4& P) {
  const double scale = P.cwiseAbs().maxCoeff();
  if ((P - P.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * std::max(1.0, scale)) {
    throw std::invalid_argument("cholesky_sqrt: matrix is not symmetric");
  }

  Eigen::LLT<Mat4> llt(P);
  if (llt.info() == Eigen::Success) {
    return llt.matrixL();
  }
  const double jitter = 1e-12 * P.trace() / 4.0;
  llt.compute(P + jitter * Mat4::Identity());
  if (llt.info() == Eigen::Success) {
    return llt.matrixL();
  }
  throw CovarianceDegenerateError(
      "covariance is not positive definite (jitter retry failed)");
}

const CubatureSet& cubature_directions() {
  // sqrt(N) with N = 4.
  static const CubatureSet dirs = {
      Vec4{2.0, 0.0, 0.0, 0.0},  Vec4{0.0, 2.0, 0.0, 0.0},
      Vec4{0.0, 0.0, 2.0, 0.0},  Vec4{0.0, 0.0, 0.0, 2.0},
      Vec4{-2.0, 0.0, 0.0, 0.0}, Vec4{0.0, -2.0, 0.0, 0.0},
      Vec4{0.0, 0.0, -2.0, 0.0}, Vec4{0.0, 0.0, 0.0, -2.0},
  };
  return dirs;
}

PredictionIntermediate ckf_predict(const FilterState& state,
                                   const AngularRate& w, double dt,
                                   const Mat4& Q) {
  const Mat4 S = cholesky_sqrt(state.P);
  const Mat4 F = transition_matrix(w, dt);

  // Draw, then propagate each point through the transition.
  const CubatureSet prior_points = draw_points(S, state.q.vec());
  PredictionIntermediate pred;
  for (int i = 0; i < kCubaturePointCount; ++i) {
    pred.points[i] = F * prior_points[i];
  }

  // Mean and covariance as literal point averages.
  Vec4 mean = Vec4::Zero();
  for (const Vec4& p : pred.points) {
    mean += p;
  }
  mean *= kInvPointCount;

  Mat4 second_moment = Mat4::Zero();
  for (const Vec4& p : pred.points) {
    second_moment += p * p.transpose();
  }
  pred.q_pred = Quaternion::from_vec(mean);
  pred.P_pred =
      kInvPointCount * second_moment - mean * mean.transpose() + Q;
  return pred;
}

PredictionIntermediate kckf_predict(const FilterState& state,
                                    const AngularRate& w, double dt,
                                    const Mat4& Q) {
  const Mat4 S = cholesky_sqrt(state.P);
  const Mat4 F = transition_matrix(w, dt);

  PredictionIntermediate pred;
  const Mat4 M = F * S;
  const Vec4 mean = F * state.q.vec();
  pred.points = draw_points(M, mean);
  pred.q_pred = Quaternion::from_vec(mean);
  pred.P_pred = M * M.transpose() + Q;
  pred.sqrt_transform = M;
  return pred;
}

FilterState cubature_update(const PredictionIntermediate& pred, const Vec6& z,
                            const Mat6& R, const MagneticReference& ref,
                            PointSource mode) {
  const Vec4 q_pred = pred.q_pred.vec();
  const CubatureSet points =
      mode == PointSource::kRedraw
          ? draw_points(cholesky_sqrt(pred.P_pred), q_pred)
          : pred.points;

  std::array<Vec6, kCubaturePointCount> z_points;
  Vec6 z_mean = Vec6::Zero();
  for (int i = 0; i < kCubaturePointCount; ++i) {
    z_points[i] = observe_point(points[i], ref);
    z_mean += z_points[i];
  }
  z_mean *= kInvPointCount;

  Mat6 zz = Mat6::Zero();
  Mat4x6 qz = Mat4x6::Zero();
  for (int i = 0; i < kCubaturePointCount; ++i) {
    zz += z_points[i] * z_points[i].transpose();
    qz += points[i] * z_points[i].transpose();
  }
  const Mat6 P_zz =
      kInvPointCount * zz - z_mean * z_mean.transpose() + R;
  const Mat4x6 P_qz =
      kInvPointCount * qz - q_pred * z_mean.transpose();

  return apply_gain(q_pred, pred.P_pred, P_zz, P_qz, z - z_mean);
}

UkfWeights ukf_weights(double alpha, double beta, double kappa, int n) {
  UkfWeights w;
  w.lambda = alpha * alpha * (n + kappa) - n;
  const double denom = n + w.lambda;
  if (denom == 0.0) {
    throw std::invalid_argument("ukf_weights: n + lambda must be nonzero");
  }
  w.w0_mean = w.lambda / denom;
  w.w0_cov = w.w0_mean + (1.0 - alpha * alpha + beta);
  w.wi = 1.0 / (2.0 * denom);
  return w;
}

FilterState kckf_step(const FilterState& state, const ImuSample& sample,
                      const StepConfig& cfg) {
  return cubature_like_step(state, sample, cfg, /*rapid=*/true);
}

FilterState ckf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg) {
  return cubature_like_step(state, sample, cfg, /*rapid=*/false);
}

FilterState ukf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg) {
  const UkfWeights& w = cfg.ukf;
  if (w.lambda + kStateDim <= 0.0) {
    throw std::invalid_argument("ukf_step: n + lambda must be positive");
  }
  const double gamma = std::sqrt(kStateDim + w.lambda);
  const Mat4 Q = process_noise_cov(state.q, cfg.dt, cfg.noise.gyro_var);
  const Mat4 F = transition_matrix(sample.gyro, cfg.dt);

  // Sigma points: center, then +/- gamma * S columns.
  const auto sigma_points = [gamma](const Mat4& S, const Vec4& center) {
    std::array<Vec4, 2 * kStateDim + 1> pts;
    pts[0] = center;
    for (int j = 0; j < kStateDim; ++j) {
      const Vec4 offset = gamma * S.col(j);
      pts[1 + j] = center + offset;
      pts[1 + kStateDim + j] = center - offset;
    }
    return pts;
  };

  auto pts = sigma_points(cholesky_sqrt(state.P), state.q.vec());
  for (Vec4& p : pts) {
    p = F * p;
  }
  Vec4 q_pred = w.w0_mean * pts[0];
  for (int i = 1; i < 2 * kStateDim + 1; ++i) {
    q_pred += w.wi * pts[i];
  }
  Mat4 P_pred = w.w0_cov * (pts[0] - q_pred) * (pts[0] - q_pred).transpose();
  for (int i = 1; i < 2 * kStateDim + 1; ++i) {
    const Vec4 d = pts[i] - q_pred;
    P_pred += w.wi * d * d.transpose();
  }
  P_pred += Q;

  if (!sample.valid) {
    FilterState next;
    next.q = normalize(Quaternion::from_vec(q_pred));
    next.P = symmetrized(P_pred);
    return next;
  }

  const MagneticReference ref = magnetic_reference(sample.acc, sample.mag);
  auto upts = sigma_points(cholesky_sqrt(symmetrized(P_pred)), q_pred);
  std::array<Vec6, 2 * kStateDim + 1> zpts;
  for (int i = 0; i < 2 * kStateDim + 1; ++i) {
    zpts[i] = observe_point(upts[i], ref);
  }
  Vec6 z_mean = w.w0_mean * zpts[0];
  for (int i = 1; i < 2 * kStateDim + 1; ++i) {
    z_mean += w.wi * zpts[i];
  }
  Mat6 P_zz = w.w0_cov * (zpts[0] - z_mean) * (zpts[0] - z_mean).transpose();
  Mat4x6 P_qz =
      w.w0_cov * (upts[0] - q_pred) * (zpts[0] - z_mean).transpose();
  for (int i = 1; i < 2 * kStateDim + 1; ++i) {
    const Vec4 dq = upts[i] - q_pred;
    const Vec6 dz = zpts[i] - z_mean;
    P_zz += w.wi * dz * dz.transpose();
    P_qz += w.wi * dq * dz.transpose();
  }
  P_zz += measurement_noise_cov(cfg.noise);

  Vec6 z;
  z << sample.acc, sample.mag;
  return apply_gain(q_pred, P_pred, P_zz, P_qz, z - z_mean);
}

Mat6x4 observation_jacobian(const Vec4& q, const MagneticReference& ref) {
  const double q0 = q[0], q1 = q[1], q2 = q[2], q3 = q[3];
  const double mn = ref.north, md = ref.down;

  Mat6x4 H;
  // Gravity rows: d/dq of the third DCM row applied to (0, 0, 1).
  H.row(0) << -2 * q2, 2 * q3, -2 * q0, 2 * q1;
  H.row(1) << 2 * q1, 2 * q0, 2 * q3, 2 * q2;
  H.row(2) << 2 * q0, -2 * q1, -2 * q2, 2 * q3;
  // Magnetic rows mix the north and down reference components.
  H.row(3) << 2 * q0 * mn - 2 * q2 * md, 2 * q1 * mn + 2 * q3 * md,
      -2 * q2 * mn - 2 * q0 * md, -2 * q3 * mn + 2 * q1 * md;
  H.row(4) << -2 * q3 * mn + 2 * q1 * md, 2 * q2 * mn + 2 * q0 * md,
      2 * q1 * mn + 2 * q3 * md, -2 * q0 * mn + 2 * q2 * md;
  H.row(5) << 2 * q2 * mn + 2 * q0 * md, 2 * q3 * mn - 2 * q1 * md,
      2 * q0 * mn - 2 * q2 * md, 2 * q1 * mn + 2 * q3 * md;
  return H;
}

FilterState ekf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg) {
  const Mat4 Q = process_noise_cov(state.q, cfg.dt, cfg.noise.gyro_var);
  const Mat4 F = transition_matrix(sample.gyro, cfg.dt);

  // The transition is linear in q, so this prediction is exact.
  const Vec4 q_pred = F * state.q.vec();
  const Mat4 P_pred = F * state.P * F.transpose() + Q;

  if (!sample.valid) {
    FilterState next;
    next.q = normalize(Quaternion::from_vec(q_pred));
    next.P = symmetrized(P_pred);
    return next;
  }

  const MagneticReference ref = magnetic_reference(sample.acc, sample.mag);
  const Mat6x4 H = observation_jacobian(q_pred, ref);
  const Mat6 P_zz =
      H * P_pred * H.transpose() + measurement_noise_cov(cfg.noise);
  const Mat4x6 P_qz = P_pred * H.transpose();

  Vec6 z;
  z << sample.acc, sample.mag;
  return apply_gain(q_pred, P_pred, P_zz, P_qz,
                    z - observe_point(q_pred, ref));
}

FilterState gyro_only_step(const FilterState& state, const AngularRate& w,
                           double dt) {
  FilterState next = state;
  next.q = normalize(state_transition(state.q, w, dt));
  return next;
}

FilterState step_filter(FilterKind kind, const FilterState& state,
                        const ImuSample& sample, const StepConfig& cfg) {
  switch (kind) {
    case FilterKind::kKckf:
      return kckf_step(state, sample, cfg);
    case FilterKind::kCkf:
      return ckf_step(state, sample, cfg);
    case FilterKind::kUkf:
      return ukf_step(state, sample, cfg);
    case FilterKind::kEkf:
      return ekf_step(state, sample, cfg);
    case FilterKind::kGyroOnly:
      return gyro_only_step(state, sample.gyro, cfg.dt);
  }
  throw std::invalid_argument("step_filter: unknown filter kind");
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kKckf:
      return "kckf";
    case FilterKind::kCkf:
      return "ckf";
    case FilterKind::kUkf:
      return "ukf";
    case FilterKind::kEkf:
      return "ekf";
    case FilterKind::kGyroOnly:
      return "gyro";
  }
  return "unknown";
}

FilterKind filter_from_string(const std::string& name) {
  if (name == "kckf") return FilterKind::kKckf;
  if (name == "ckf") return FilterKind::kCkf;
  if (name == "ukf") return FilterKind::kUkf;
  if (name == "ekf") return FilterKind::kEkf;
  if (name == "gyro" || name == "gyro-only") return FilterKind::kGyroOnly;
  if (name == "kukf") {
    throw std::invalid_argument(
        "filter 'kukf' is a recognized extension slot but is not implemented "
        "here; available filters: kckf, ckf, ukf, ekf, gyro");
  }
  throw std::invalid_argument("unknown filter '" + name +
                              "'; available: kckf, ckf, ukf, ekf, gyro");
}

}  // namespace kckf
