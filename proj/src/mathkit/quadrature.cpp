#include "spdc/mathkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spdc/errors.hpp"

namespace spdc::mathkit {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

double trapezoid(std::span<const double> samples, double step) {
  if (samples.size() < 2) throw DomainError("trapezoid needs at least 2 samples");
  CompensatedSum sum;
  sum.add(0.5 * samples.front());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum.add(samples[i]);
  sum.add(0.5 * samples.back());
  return sum.value() * step;
}

double integrate_grid(const RealGrid2D& grid) {
  if (grid.rows() < 2 || grid.cols() < 2) throw DomainError("integrate_grid needs at least 2 samples per axis");
  std::vector<double> row_integrals(grid.rows());
  const double step2 = grid.axis2().step();
  for (std::size_t i = 0; i < grid.rows(); ++i)
    row_integrals[i] = trapezoid(std::span(grid.values()).subspan(i * grid.cols(), grid.cols()), step2);
  return trapezoid(row_integrals, grid.axis1().step());
}

RefinementResult refine_by_doubling(const std::function<double(std::size_t)>& estimate, std::size_t count) {
  RefinementResult r;
  r.coarse = estimate(count);
  r.fine = estimate(2 * count - 1);
  r.relative_change = std::abs(r.fine - r.coarse) / std::max(std::abs(r.fine), std::abs(r.coarse));
  return r;
}

double max_relative_change(const RealGrid2D& reference, const RealGrid2D& candidate, double threshold_fraction) {
  if (!(reference.axis1() == candidate.axis1() && reference.axis2() == candidate.axis2()))
    throw std::invalid_argument("max_relative_change: grids do not share axes");
  double peak = 0.0;
  for (double v : reference.values()) peak = std::max(peak, std::abs(v));
  const double threshold = threshold_fraction * peak;
  double worst = 0.0;
  for (std::size_t k = 0; k < reference.values().size(); ++k) {
    const double a = reference.values()[k];
    if (std::abs(a) < threshold || a == 0.0) continue;
    worst = std::max(worst, std::abs(a - candidate.values()[k]) / std::abs(a));
  }
  return worst;
}

}  // namespace spdc::mathkit
