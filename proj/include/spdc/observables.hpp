#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/mathkit/fourier.hpp"
#include "spdc/mathkit/grid.hpp"

namespace spdc {

enum class Variable { OmegaSignal, OmegaIdler, KxSignal, KxIdler };

std::string to_string(Variable v);
/// Accepts omega_s, omega_i, k_xs, k_xi. Throws std::invalid_argument otherwise.
Variable variable_from_string(const std::string& name);

/// Rectangular window on one variable. `pass` keeps [lo, hi]; otherwise [lo, hi] is removed.
struct WindowFilter {
  Variable variable = Variable::OmegaIdler;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = true;

  bool admits(double value) const { return (value >= lo && value <= hi) == pass; }
  bool operator==(const WindowFilter&) const = default;
};

/// Joint spectrum request. The outer grid is (omega_i, k_xs); the inner integration runs over the offsets
///   d_omega = omega_s - (omega_pc - omega_i),   d_k = k_xi + k_xs,
/// a unit-Jacobian change of variables from (omega_s, k_xi). k_ys = k_yi = 0.
struct ObservableRequest {
  mathkit::UniformAxis omega_i{"omega_i", "rad/fs", 0.0, 1.0, 256};
  mathkit::UniformAxis k_xs{"k_xs", "rad/um", -0.7, 0.7, 256};
  std::size_t inner_omega_count = 128;
  std::size_t inner_k_count = 128;
  /// Explicit inner ranges (d_omega, d_k). When absent a pre-scan locates the support.
  std::optional<ClosedRange> inner_omega;
  std::optional<ClosedRange> inner_k;
  std::vector<WindowFilter> filters;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  std::size_t threads = 1;
  /// Evaluate jaf directly at every point instead of the tabulated profile. Slow.
  bool exact = false;
  /// Pin k_x on the idler and integrate over the signal (exact path only).
  bool swap_roles = false;
};

/// Outer omega_i axis centred on the degenerate frequency, as wide as the dispersion data allows.
mathkit::UniformAxis default_omega_i_axis(const JafContext& ctx, std::size_t count = 256);

struct JointSpectrum {
  /// axis1 omega_i, axis2 k_xs; integral over the grid is 1.
  mathkit::RealGrid2D values;
  mathkit::UniformAxis inner_omega;
  mathkit::UniformAxis inner_k;
  /// Integral of |jaf|^2 before normalization (amplitude_scale^2 units).
  double raw_integral = 0.0;
  /// Largest inner-boundary / inner-max ratio over outer points above 1e-3 of the peak.
  double worst_boundary_ratio = 0.0;
  bool clipped = false;
};

/// J(omega_i, k_xs) = \int d omega_s dk_xi |f|^2, trapezoid in the inner variables, normalized.
/// Throws DomainError when a photon frequency leaves the dispersion range.
JointSpectrum joint_spectrum(const ObservableRequest& req, const JafContext& ctx);

/// S(omega_i) = \int dk_xs J.
mathkit::Series1D marginal_spectrum(const mathkit::RealGrid2D& joint);

/// J(omega_i, k_xs = k) with linear interpolation between columns. Throws DomainError outside the axis.
mathkit::Series1D cut_at_kxs(const mathkit::RealGrid2D& joint, double k_xs);

struct SpacetimeMap {
  /// axis1 t_i (fs), axis2 x_s (um).
  mathkit::ComplexGrid2D values;
  mathkit::RealGrid2D magnitude;
};

/// FJ(x_s, t_i) = 1/(2 pi)^2 \int dk_xs d omega_i J e^{-i (omega_i t_i + k_xs x_s)}.
SpacetimeMap spacetime_map(const mathkit::RealGrid2D& joint, std::size_t pad_factor = 4);

struct Widths {
  double axis1 = 0.0;
  double axis2 = 0.0;
};

/// FWHM of the axis-aligned cuts through the global maximum (ties: smallest |axis1|, then |axis2|).
/// Throws RangeError if the maximum sits on the boundary or a cut never falls below half maximum.
Widths extract_widths(const mathkit::RealGrid2D& map);

/// Total length of the set where the series is >= half its maximum, crossings linearly interpolated.
double half_max_support(const mathkit::Series1D& series);

/// Number of maximal runs of samples >= fraction * max.
std::size_t count_regions_above(const mathkit::Series1D& series, double fraction);

/// Number of 4-connected components of grid cells >= fraction * max.
std::size_t count_components_above(const mathkit::RealGrid2D& grid, double fraction);

/// Pearson correlation of (omega_i, k_xs) under the density J.
double normalized_correlation(const mathkit::RealGrid2D& joint);

}  // namespace spdc
