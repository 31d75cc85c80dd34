#pragma once

#include <complex>
#include <optional>

namespace spdc {

/// Gaussian pulsed pump with quadratic spectral phase.
///
/// The spectral width is given either as a wavelength FWHM (um) or directly as the angular-frequency
/// width sigma (rad/fs) of the amplitude exp(-dw^2 / sigma^2). Exactly one must be set.
struct PumpConfig {
  double lambda_um = 0.8;
  std::optional<double> fwhm_um = 0.01;
  std::optional<double> sigma_omega;
  /// Spectral chirp, fs^2.
  double beta_fs2 = 0.0;
  double waist_x_um = 100.0;
  double waist_y_um = 100.0;

  bool operator==(const PumpConfig&) const = default;
};

/// Throws DomainError when any PumpConfig invariant is violated.
void validate(const PumpConfig& cfg);

double central_omega(const PumpConfig& cfg);

/// sigma in rad/fs. A wavelength FWHM is mapped through the first-order
/// dispersion of omega(lambda) about the central wavelength:
/// sigma = (2 pi c / lambda^2) FWHM / (2 sqrt(2 ln 2)).
double sigma_omega(const PumpConfig& cfg);

/// exp(-dw^2 / sigma^2) exp(i beta dw^2) with dw = omega_s + omega_i - omega_pc.
std::complex<double> envelope(double omega_s, double omega_i, const PumpConfig& cfg);

/// exp(-(kx^2 Wx^2 + ky^2 Wy^2) / 4) for the summed signal+idler transverse momentum.
double spatial_factor(double kx, double ky, const PumpConfig& cfg);

}  // namespace spdc
