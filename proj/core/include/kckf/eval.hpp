#pragma once

#include "kckf/filters.hpp"
#include "kckf/quaternion.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace kckf::eval {

/// One attitude estimate on the dataset's timestamp grid.
struct Estimate {
  double t = 0.0;
  Quaternion q;
};

/// Per-angle RMSE in degrees.
struct RmseReport {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  std::size_t n = 0;
};

/// Wall-clock cost of one filter, per processed nine-axis measurement.
/// `checksum` folds the filter output into the report so the timed loop
/// cannot be optimized away; it is also a cheap cross-repetition
/// determinism witness.
struct TimingReport {
  std::string filter;
  double mean_ms = 0.0;  // mean per-measurement time
  double std_ms = 0.0;   // unbiased std across repetitions
  int repetitions = 0;
  std::size_t samples = 0;
  double checksum = 0.0;
};

/// Lockstep divergence between two estimators over a dataset.
struct EquivalenceReport {
  double max_q_divergence = 0.0;  // max abs difference, state vector
  double max_p_divergence = 0.0;  // max abs difference, covariance
  std::size_t steps = 0;

  bool pass(double tolerance) const {
    return max_q_divergence <= tolerance && max_p_divergence <= tolerance;
  }
};

/// Runs one filter over a preprocessed dataset.
std::vector<Estimate> run_filter(FilterKind kind,
                                 const std::vector<ImuSample>& samples,
                                 const StepConfig& cfg,
                                 const FilterState& init);

/// Angle-wise RMSE with wraparound: per sample the error is the smallest of
/// the direct difference and the differences against the reference shifted
/// by +/-360 degrees. Length mismatch throws std::invalid_argument.
RmseReport rmse_euler(const std::vector<EulerAngles>& est,
                      const std::vector<EulerAngles>& ref);

/// Times the per-measurement filter step over `repetitions` full passes of
/// the dataset (after `warmup` untimed passes). Only predict+update is in
/// the timed region; preprocessing and allocation happen outside. Mean and
/// unbiased standard deviation are across repetitions, each repetition
/// contributing its batch-elapsed / sample-count figure.
/// Requires repetitions >= 3 and a nonempty preprocessed dataset.
TimingReport benchmark_filter(FilterKind kind,
                              const std::vector<ImuSample>& samples,
                              const StepConfig& cfg, const FilterState& init,
                              int repetitions, int warmup = 2);

/// Runs two filters in lockstep over a dataset and reports the maximum
/// state/covariance divergence seen at any step boundary. Defaults compare
/// the summation-form and simplified cubature filters, which are
/// algebraically equivalent and must agree to rounding.
EquivalenceReport equivalence_check(
    const std::vector<ImuSample>& samples, const StepConfig& cfg,
    const FilterState& init, FilterKind a = FilterKind::kCkf,
    FilterKind b = FilterKind::kKckf);

/// Euler view of an estimate sequence.
std::vector<EulerAngles> to_euler(const std::vector<Estimate>& estimates);

}  // namespace kckf::eval
