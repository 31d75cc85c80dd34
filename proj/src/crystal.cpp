#include "spdc/crystal.hpp"

#include <cmath>
#include <string>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

void validate(const CrystalConfig& cfg) {
  if (!(cfg.length_um > 0.0) || !std::isfinite(cfg.length_um)) throw DomainError("crystal length must be positive");
  if (!std::isfinite(cfg.chirp_D) || !std::isfinite(cfg.z0_um) || !std::isfinite(cfg.temperature_c))
    throw DomainError("crystal parameters must be finite");
  if (!cfg.poled) {
    if (cfg.chirp_D != 0.0) throw DomainError("an unpoled crystal cannot carry a grating chirp");
    return;
  }
  if (!(cfg.period_um > 0.0) || !std::isfinite(cfg.period_um)) throw DomainError("poling period must be positive");
  // K is affine in z, so checking both faces covers the interior.
  const double k0 = grating_wavenumber(cfg);
  const double at_entrance = k0 + cfg.chirp_D * (cfg.z0_um + cfg.boundary_a());
  const double at_exit = k0 + cfg.chirp_D * cfg.z0_um;
  if (!(at_entrance > 0.0 && at_exit > 0.0))
    throw DomainError("local grating frequency K(z) is not positive across the crystal");
}

double effective_period(const CrystalConfig& cfg) {
  if (!cfg.thermal_expansion) return cfg.period_um;
  const double dt = cfg.temperature_c - cfg.period_reference_c;
  return cfg.period_um * (1.0 + kPeriodExpansionLinear * dt + kPeriodExpansionQuadratic * dt * dt);
}

double grating_wavenumber(const CrystalConfig& cfg) {
  return cfg.poled ? units::kTwoPi / effective_period(cfg) : 0.0;
}

double local_spatial_frequency(const CrystalConfig& cfg, double z_um) {
  if (!(z_um >= cfg.boundary_a() && z_um <= cfg.boundary_a() + cfg.length_um))
    throw DomainError("z = " + std::to_string(z_um) + " um lies outside the crystal [" +
                      std::to_string(cfg.boundary_a()) + ", " + std::to_string(cfg.boundary_a() + cfg.length_um) +
                      "]");
  return grating_wavenumber(cfg) + cfg.chirp_D * (cfg.z0_um + z_um);
}

double chirp_strength(const CrystalConfig& cfg) { return cfg.chirp_D * cfg.length_um * cfg.length_um; }

double collinear_degenerate_mismatch(const DispersionModel& dispersion, double pump_lambda_um,
                                     double temperature_c, double period_um) {
  const double omega_p = units::omega_from_wavelength(pump_lambda_um);
  return dispersion.wavevector_magnitude(omega_p, temperature_c) -
         2.0 * dispersion.wavevector_magnitude(0.5 * omega_p, temperature_c) - units::kTwoPi / period_um;
}

double solve_central_period(const DispersionModel& dispersion, double pump_lambda_um, double temperature_c) {
  const double omega_p = units::omega_from_wavelength(pump_lambda_um);
  const double material_mismatch = dispersion.wavevector_magnitude(omega_p, temperature_c) -
                                   2.0 * dispersion.wavevector_magnitude(0.5 * omega_p, temperature_c);
  if (!(material_mismatch > 0.0))
    throw InfeasibleError("collinear degenerate mismatch " + std::to_string(material_mismatch) +
                          " rad/um is not positive; first-order QPM is impossible");
  return units::kTwoPi / material_mismatch;
}

}  // namespace spdc
