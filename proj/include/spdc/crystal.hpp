#pragma once

#include "spdc/dispersion.hpp"

namespace spdc {

/// Linearly chirped quasi-phase-matched grating occupying z in [-L, 0].
///
/// The poling is modelled by its first Fourier order, d(z) ~ exp(-i K(z) z) with
/// K(z) = K0 + D (z0 + z) and K0 = 2 pi / period.
struct CrystalConfig {
  double length_um = 5000.0;
  /// Grating chirp D, rad/um^2.
  double chirp_D = 0.0;
  /// Reference position z0, um (K(-z0) = K0).
  double z0_um = 2500.0;
  /// Central poling period at `period_reference_c`, um.
  double period_um = 20.33;
  double temperature_c = 25.0;
  /// Scale the period with the linear+quadratic thermal expansion of LiNbO3.
  bool thermal_expansion = false;
  double period_reference_c = 25.0;
  /// false: homogeneous crystal with no grating (K0 = 0, D must be 0).
  bool poled = true;

  double ratio_r() const { return z0_um / length_um; }
  /// Entrance face. Fixed to -L.
  double boundary_a() const { return -length_um; }

  bool operator==(const CrystalConfig&) const = default;
};

/// Thermal expansion coefficients applied to the period when enabled (1/K, 1/K^2).
inline constexpr double kPeriodExpansionLinear = 1.54e-5;
inline constexpr double kPeriodExpansionQuadratic = 5.3e-9;

/// Throws DomainError when any CrystalConfig invariant is violated.
void validate(const CrystalConfig& cfg);

/// Period at the crystal temperature, including expansion when enabled.
double effective_period(const CrystalConfig& cfg);

/// K0 = 2 pi / effective_period, or 0 for an unpoled crystal.
double grating_wavenumber(const CrystalConfig& cfg);

/// K(z) = K0 + D (z0 + z) for z inside the crystal.
double local_spatial_frequency(const CrystalConfig& cfg, double z_um);

/// xi = D L^2, dimensionless.
double chirp_strength(const CrystalConfig& cfg);

/// Period that zeroes the collinear degenerate mismatch k_p - 2 k(omega_p / 2) - 2 pi / period.
/// Throws InfeasibleError when the mismatch has no positive root.
double solve_central_period(const DispersionModel& dispersion, double pump_lambda_um, double temperature_c);

/// k_p - 2 k(omega_p / 2) - 2 pi / period, rad/um.
double collinear_degenerate_mismatch(const DispersionModel& dispersion, double pump_lambda_um,
                                     double temperature_c, double period_um);

}  // namespace spdc
