#include "kckf/flops.hpp"

#include <stdexcept>

namespace kckf::flops {

namespace {

constexpr int kN = 4;           // state dimension
constexpr int kPoints = 2 * kN; // cubature points

/// Scaling a matrix or vector of `size` entries by 1/(2N): one multiply to
/// form 2*N, one division for the reciprocal, then `size` multiplies.
FlopCount scale_by_inverse_point_count(int size) {
  return FlopCount{1 + size, 0, 1};
}

/// Entrywise addition (or subtraction) of `size` entries.
FlopCount entrywise_add(int size) { return FlopCount{0, size, 0}; }

}  // namespace

FlopCount matrix_product_flops(int l, int m, int n) {
  if (l < 1 || m < 1 || n < 1) {
    throw std::invalid_argument(
        "matrix_product_flops: dimensions must be >= 1");
  }
  return FlopCount{static_cast<std::int64_t>(l) * m * n,
                   static_cast<std::int64_t>(l) * (m - 1) * n, 0};
}

CostBreakdown ckf_prediction_flops() {
  CostBreakdown b;

  // Point draw: per point one 4x4 * 4x1 product plus a 4-vector offset.
  b.lines.push_back(
      {"draw points from sqrt covariance",
       kPoints * (matrix_product_flops(kN, kN, 1) + entrywise_add(kN))});

  // Propagation: per point one 4x4 * 4x1 product.
  b.lines.push_back({"propagate points through transition",
                     kPoints * matrix_product_flops(kN, kN, 1)});

  // Mean: accumulate 2N vectors, then scale by 1/(2N).
  b.lines.push_back({"predicted mean (point average)",
                     (kPoints - 1) * entrywise_add(kN) +
                         scale_by_inverse_point_count(kN)});

  // Covariance: 2N outer products accumulated and scaled, minus the mean
  // outer product, plus the process noise matrix.
  b.lines.push_back(
      {"predicted covariance (point second moment)",
       kPoints * matrix_product_flops(kN, 1, kN) +
           (kPoints - 1) * entrywise_add(kN * kN) +
           scale_by_inverse_point_count(kN * kN) +
           matrix_product_flops(kN, 1, kN) + entrywise_add(kN * kN) +
           entrywise_add(kN * kN)});

  return b;
}

CostBreakdown kckf_prediction_flops() {
  CostBreakdown b;

  // M = F * S.
  b.lines.push_back(
      {"sqrt-factor transform M = F*S", matrix_product_flops(kN, kN, kN)});

  // Mean: one matrix-vector product.
  b.lines.push_back(
      {"predicted mean F*q", matrix_product_flops(kN, kN, 1)});

  // Points: per point one 4x4 * 4x1 product plus a 4-vector offset.
  b.lines.push_back(
      {"offset points from M",
       kPoints * (matrix_product_flops(kN, kN, 1) + entrywise_add(kN))});

  // Covariance: M * M^T plus the process noise matrix.
  b.lines.push_back({"covariance M*M^T + Q",
                     matrix_product_flops(kN, kN, kN) +
                         entrywise_add(kN * kN)});

  return b;
}

double prediction_flop_reduction() {
  const double ckf = static_cast<double>(ckf_prediction_flops().total().total());
  const double kckf =
      static_cast<double>(kckf_prediction_flops().total().total());
  return 1.0 - kckf / ckf;
}

}  // namespace kckf::flops
