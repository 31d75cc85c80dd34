#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "spdc/mathkit/grid.hpp"

namespace spdc::mathkit {

/// Neumaier-compensated running sum. Summation order is the call order.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Composite trapezoid over uniformly spaced samples.
double trapezoid(std::span<const double> samples, double step);

/// Tensor-product trapezoid over a real grid. Throws DomainError for fewer than 2 samples per axis.
double integrate_grid(const RealGrid2D& grid);

/// Grid-refinement harness: evaluates `estimate(n)` and `estimate(2n - 1)` (the doubled grid keeps
/// every coarse node) and reports the relative change.
struct RefinementResult {
  double coarse = 0.0;
  double fine = 0.0;
  double relative_change = 0.0;
};
RefinementResult refine_by_doubling(const std::function<double(std::size_t)>& estimate, std::size_t count);

/// Largest |a - b| / |a| over points where |a| >= threshold_fraction * max|a|. Grids must share axes.
double max_relative_change(const RealGrid2D& reference, const RealGrid2D& candidate, double threshold_fraction);

}  // namespace spdc::mathkit
