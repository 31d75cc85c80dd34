#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "spdc/crystal.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/mathkit/grid.hpp"
#include "spdc/pump.hpp"

namespace spdc {

/// Below this |xi| the chirped closed form is replaced by the unchirped sinc form.
inline constexpr double kXiSwitch = 1e-6;

/// Immutable bundle of everything the joint amplitude depends on.
class JafContext {
 public:
  JafContext(PumpConfig pump, CrystalConfig crystal, DispersionModel dispersion,
             std::complex<double> amplitude_scale = 1.0);

  const PumpConfig& pump() const { return pump_; }
  const CrystalConfig& crystal() const { return crystal_; }
  const DispersionModel& dispersion() const { return dispersion_; }
  std::complex<double> amplitude_scale() const { return amplitude_scale_; }

  double temperature() const { return crystal_.temperature_c; }
  double length() const { return crystal_.length_um; }
  double omega_pc() const { return omega_pc_; }
  double sigma() const { return sigma_; }
  /// 2 pi / period (0 when unpoled).
  double k0() const { return k0_; }
  double xi() const { return xi_; }
  double ratio_r() const { return r_; }

 private:
  PumpConfig pump_;
  CrystalConfig crystal_;
  DispersionModel dispersion_;
  std::complex<double> amplitude_scale_;
  double omega_pc_ = 0.0;
  double sigma_ = 0.0;
  double k0_ = 0.0;
  double xi_ = 0.0;
  double r_ = 0.0;
};

/// x_t = L (k_p - k_zs - k_zi - K0 - k_t^2 / (2 k_p)), with k_p taken at omega_s + omega_i.
/// Throws KinematicsError when either photon is evanescent.
double phase_mismatch_xt(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx);

/// Normalized longitudinal integral I(rho, xi) = \int_0^1 exp(i (rho u - xi u^2)) du, evaluated in closed
/// form through the complex error function (sinc form for |xi| < kXiSwitch). |I| <= 1.
std::complex<double> pmf_integral(double rho, double xi);

/// Joint amplitude
///   scale e^{3 i pi / 4} / (2 sqrt(xi)) envelope e^{-w0^2 / 4} e^{i rho^2 / (4 xi)}
///     [erf(e^{i pi/4} rho / (2 sqrt xi)) - erf(e^{i pi/4} (rho - 2 xi) / (2 sqrt xi))]
/// with rho = -x_t + r xi. Equal to -(scale / sqrt(pi)) envelope e^{-w0^2/4} I(rho, xi).
/// Evanescent photons give exactly 0.
std::complex<double> jaf(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx);

/// Same quantity as jaf, with the longitudinal integral done by brute-force quadrature over z in [-L, 0]
/// using the local grating frequency K(z). Composite Simpson, at least 1e4 intervals, Richardson-corrected.
std::complex<double> oracle_unchirped(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx);

/// Oracle integral with an explicit interval count (no Richardson step). For convergence checks.
std::complex<double> oracle_unchirped(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx,
                                      std::size_t intervals);

/// |I(rho, xi)| over the (omega_s, omega_i) plane; envelope and spatial factors are left out.
/// Collinear: both photons at k = 0. Otherwise the signal carries +kx and the idler -kx.
/// Evanescent points are 0.
mathkit::RealGrid2D pmf_map(const mathkit::UniformAxis& omega_s, const mathkit::UniformAxis& omega_i,
                            const JafContext& ctx, bool collinear = true, double kx = 0.0);

/// Tabulated |I(rho, xi)|^2 at fixed xi for fast bulk evaluation.
///
/// I is the Fourier transform of a function supported on [0, 1], so it is band-limited and the table
/// (step 1/64, 4-point Lagrange) reproduces it to about 1e-9 of the peak. Outside the table range the
/// closed form is evaluated directly.
class PmfProfile {
 public:
  explicit PmfProfile(double xi, double margin = 1024.0, double step = 1.0 / 64.0);

  double intensity(double rho) const;
  double xi() const { return xi_; }

 private:
  double xi_;
  double rho0_;
  double inv_step_;
  std::vector<double> table_;
};

}  // namespace spdc
