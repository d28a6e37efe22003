#pragma once

#include "kckf/models.hpp"
#include "kckf/quaternion.hpp"
#include "kckf/types.hpp"

#include <array>
#include <optional>
#include <string>

namespace kckf {

/// Posterior state of one estimator: unit attitude estimate and 4x4
/// covariance. P is kept symmetric positive definite by the step functions.
struct FilterState {
  Quaternion q;
  Mat4 P = Mat4::Identity();
};

/// The 2N cubature/sigma point set for the four-dimensional state.
using CubatureSet = std::array<Vec4, kCubaturePointCount>;

/// Output of a prediction step, in either the summation (CKF) or the
/// simplified (rapid) form. `q_pred` is intentionally left non-unit so the
/// two routes stay bit-comparable. `sqrt_transform` is M = F * S and is only
/// produced by the simplified route, which reconstructs the covariance as
/// M * M^T + Q.
struct PredictionIntermediate {
  Quaternion q_pred;
  Mat4 P_pred = Mat4::Identity();
  CubatureSet points{};
  std::optional<Mat4> sqrt_transform;
};

/// Where the measurement-propagation points of the cubature update come
/// from: redrawn from the Cholesky factor of the predicted covariance
/// (the canonical choice), or reusing the prediction's propagated points.
enum class PointSource {
  kRedraw,
  kReuse,
};

/// Lower-triangular Cholesky factor S with S * S^T = P. When the plain
/// factorization fails, one retry is made with jitter 1e-12 * trace(P)/4 on
/// the diagonal; if that also fails, CovarianceDegenerateError is thrown.
/// Throws std::invalid_argument when P is visibly asymmetric.
Mat4 cholesky_sqrt(const Mat4& P);

/// The eight fixed direction vectors e_i = sqrt(4) * [1]_i, i.e. +/-2 along
/// each state axis (positive axes first). They sum to zero and satisfy
/// (1/8) * sum_i e_i e_i^T = I.
const CubatureSet& cubature_directions();

/// Cubature prediction in literal summation form: draw points from the
/// Cholesky factor of P, propagate each through F, then recover mean and
/// covariance as point averages. This is the reference route; it is kept
/// deliberately unoptimized.
PredictionIntermediate ckf_predict(const FilterState& state,
                                   const AngularRate& w, double dt,
                                   const Mat4& Q);

/// Simplified (rapid) cubature prediction: M = F*S, q_pred = F*q,
/// points_i = M*e_i + q_pred, P_pred = M*M^T + Q. Algebraically identical to
/// ckf_predict but with fewer floating-point operations.
PredictionIntermediate kckf_predict(const FilterState& state,
                                    const AngularRate& w, double dt,
                                    const Mat4& Q);

/// Shared cubature measurement update. Propagates the selected point set
/// through the observation model, forms the innovation and cross
/// covariances, applies the Kalman correction, renormalizes the quaternion
/// and symmetrizes the covariance. The gain solve goes through the Cholesky
/// factorization of the innovation covariance; a failed factorization throws
/// InnovationDegenerateError.
FilterState cubature_update(const PredictionIntermediate& pred, const Vec6& z,
                            const Mat6& R, const MagneticReference& ref,
                            PointSource mode);

/// Scaled sigma-point weights for the UKF.
struct UkfWeights {
  double lambda = 0.0;
  double w0_mean = 0.0;
  double w0_cov = 0.0;
  double wi = 0.0;  // all non-central points, both mean and covariance
};

/// lambda = alpha^2 (n + kappa) - n; w0m = lambda/(n+lambda);
/// w0c = w0m + (1 - alpha^2 + beta); wi = 1/(2(n+lambda)).
/// Throws std::invalid_argument when n + lambda == 0.
UkfWeights ukf_weights(double alpha, double beta, double kappa,
                       int n = kStateDim);

/// Per-step parameters shared by every estimator. `dt` is the sampling
/// period; `mode` and `ukf` only affect the filters that use them.
struct StepConfig {
  NoiseParams noise;
  double dt = 0.01;
  PointSource mode = PointSource::kRedraw;
  UkfWeights ukf = ukf_weights(1e-3, 2.0, 0.0);
};

/// One predict+update step of the rapid-prediction cubature filter.
/// Invalid samples advance the state by prediction only.
FilterState kckf_step(const FilterState& state, const ImuSample& sample,
                      const StepConfig& cfg);

/// One predict+update step of the summation-form cubature filter.
FilterState ckf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg);

/// One UKF step: scaled sigma points in both prediction and update.
FilterState ukf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg);

/// One EKF step. The process model is linear, so the prediction is exact;
/// the update linearizes the observation model with the analytic Jacobian.
FilterState ekf_step(const FilterState& state, const ImuSample& sample,
                     const StepConfig& cfg);

/// Dead-reckoning baseline: integrate the gyro, leave P untouched.
FilterState gyro_only_step(const FilterState& state, const AngularRate& w,
                           double dt);

/// Analytic Jacobian dh/dq of the observation model at a raw state vector.
Mat6x4 observation_jacobian(const Vec4& q, const MagneticReference& ref);

enum class FilterKind {
  kKckf,
  kCkf,
  kUkf,
  kEkf,
  kGyroOnly,
};

/// Uniform dispatch used by the pipeline, the evaluator, and the benchmarks.
FilterState step_filter(FilterKind kind, const FilterState& state,
                        const ImuSample& sample, const StepConfig& cfg);

std::string to_string(FilterKind kind);
/// Parses "kckf", "ckf", "ukf", "ekf", "gyro". Throws std::invalid_argument
/// for anything else; "kukf" gets a dedicated message since it is a known
/// estimator this library deliberately does not ship.
FilterKind filter_from_string(const std::string& name);

}  // namespace kckf
