#include "spdc/pump.hpp"

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

void validate(const PumpConfig& cfg) {
  if (!(cfg.lambda_um > 0.0) || !std::isfinite(cfg.lambda_um)) throw DomainError("pump wavelength must be positive");
  if (cfg.fwhm_um.has_value() == cfg.sigma_omega.has_value())
    throw DomainError("pump width: set exactly one of fwhm_um and sigma_omega");
  if (cfg.fwhm_um && !(*cfg.fwhm_um > 0.0)) throw DomainError("pump fwhm_um must be positive");
  if (cfg.sigma_omega && !(*cfg.sigma_omega > 0.0)) throw DomainError("pump sigma_omega must be positive");
  if (!std::isfinite(cfg.beta_fs2)) throw DomainError("pump chirp must be finite");
  if (!(cfg.waist_x_um > 0.0) || !(cfg.waist_y_um > 0.0)) throw DomainError("pump waists must be positive");
}

double central_omega(const PumpConfig& cfg) { return units::omega_from_wavelength(cfg.lambda_um); }

double sigma_omega(const PumpConfig& cfg) {
  if (cfg.sigma_omega) return *cfg.sigma_omega;
  const double sigma_lambda = *cfg.fwhm_um / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  return units::kTwoPi * units::kSpeedOfLight / (cfg.lambda_um * cfg.lambda_um) * sigma_lambda;
}

std::complex<double> envelope(double omega_s, double omega_i, const PumpConfig& cfg) {
  const double dw = omega_s + omega_i - central_omega(cfg);
  const double sigma = sigma_omega(cfg);
  const double dw2 = dw * dw;
  return std::exp(-dw2 / (sigma * sigma)) * std::polar(1.0, cfg.beta_fs2 * dw2);
}

double spatial_factor(double kx, double ky, const PumpConfig& cfg) {
  const double w0_sq = kx * kx * cfg.waist_x_um * cfg.waist_x_um + ky * ky * cfg.waist_y_um * cfg.waist_y_um;
  return std::exp(-0.25 * w0_sq);
}

}  // namespace spdc
