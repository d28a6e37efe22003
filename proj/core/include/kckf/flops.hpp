#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kckf::flops {

/// Operation tally under the 1/1/4 convention: additions, subtractions and
/// multiplications cost one FLOP each, a division costs four. `div` counts
/// divisions (not FLOPs); the weighting happens in total().
struct FlopCount {
  std::int64_t mul = 0;
  std::int64_t add = 0;
  std::int64_t div = 0;

  std::int64_t total() const { return mul + add + 4 * div; }

  FlopCount& operator+=(const FlopCount& o) {
    mul += o.mul;
    add += o.add;
    div += o.div;
    return *this;
  }
  friend FlopCount operator+(FlopCount a, const FlopCount& b) { return a += b; }
  friend FlopCount operator*(int times, const FlopCount& c) {
    return {times * c.mul, times * c.add, times * c.div};
  }
  friend bool operator==(const FlopCount&, const FlopCount&) = default;
};

/// Cost of the column-dot-product matrix multiply C = A * B with
/// A in R^(l x m), B in R^(m x n): l*m*n multiplications and l*(m-1)*n
/// additions. Throws std::invalid_argument on non-positive dimensions.
FlopCount matrix_product_flops(int l, int m, int n);

/// One labeled line of a prediction-cost breakdown.
struct CostLine {
  std::string label;
  FlopCount cost;
};

struct CostBreakdown {
  std::vector<CostLine> lines;

  FlopCount total() const {
    FlopCount sum;
    for (const CostLine& line : lines) sum += line.cost;
    return sum;
  }
};

/// Cost of the summation-form cubature prediction (point draw, point
/// propagation, mean, covariance). The process noise matrix is assumed
/// precomputed and is excluded. Totals 826 FLOPs.
CostBreakdown ckf_prediction_flops();

/// Cost of the simplified prediction (sqrt-factor transform, mean
/// propagation, point offsets, covariance reconstruction). Same exclusions.
/// Totals 524 FLOPs.
CostBreakdown kckf_prediction_flops();

/// Fractional FLOP reduction of the simplified route over the summation
/// route: 1 - 524/826, about 36.6%.
double prediction_flop_reduction();

}  // namespace kckf::flops
