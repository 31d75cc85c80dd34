#include "spdc/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "spdc/errors.hpp"
#include "spdc/mathkit/cerf.hpp"

namespace spdc {

namespace {

using cd = std::complex<double>;

const double kSqrtPi = std::sqrt(std::numbers::pi);

// nullopt for evanescent photons
std::optional<double> mismatch_without_grating(const PhotonMode& s, const PhotonMode& i, const JafContext& ctx) {
  const double t = ctx.temperature();
  const auto& disp = ctx.dispersion();
  const double ks = disp.wavevector_magnitude(s.omega, t);
  const double ki = disp.wavevector_magnitude(i.omega, t);
  const double rs = ks * ks - s.kx * s.kx - s.ky * s.ky;
  const double ri = ki * ki - i.kx * i.kx - i.ky * i.ky;
  if (!(rs > 0.0) || !(ri > 0.0)) return std::nullopt;
  const double kp = disp.wavevector_magnitude(s.omega + i.omega, t);
  const double ktx = s.kx + i.kx;
  const double kty = s.ky + i.ky;
  return kp - std::sqrt(rs) - std::sqrt(ri) - (ktx * ktx + kty * kty) / (2.0 * kp);
}

cd outside_factor(const PhotonMode& s, const PhotonMode& i, const JafContext& ctx) {
  return -ctx.amplitude_scale() / kSqrtPi * envelope(s.omega, i.omega, ctx.pump()) *
         spatial_factor(s.kx + i.kx, s.ky + i.ky, ctx.pump());
}

cd simpson_over_crystal(double dk, const CrystalConfig& crystal, std::size_t n) {
  if (n % 2) ++n;
  const double length = crystal.length_um;
  const double a = crystal.boundary_a();
  const double h = length / static_cast<double>(n);
  auto g = [&](std::size_t k) {
    const double z = k == n ? a + length : a + static_cast<double>(k) * h;
    const double phase = dk * z - local_spatial_frequency(crystal, z) * z;
    return cd(std::cos(phase), std::sin(phase));
  };
  cd odd{}, even{};
  for (std::size_t k = 1; k < n; k += 2) odd += g(k);
  for (std::size_t k = 2; k < n; k += 2) even += g(k);
  const cd sum = g(0) + g(n) + 4.0 * odd + 2.0 * even;
  return sum * (h / 3.0) / length;
}

}  // namespace

JafContext::JafContext(PumpConfig pump, CrystalConfig crystal, DispersionModel dispersion,
                       std::complex<double> amplitude_scale)
    : pump_(std::move(pump)),
      crystal_(std::move(crystal)),
      dispersion_(std::move(dispersion)),
      amplitude_scale_(amplitude_scale) {
  validate(pump_);
  validate(crystal_);
  if (!std::isfinite(amplitude_scale_.real()) || !std::isfinite(amplitude_scale_.imag()) ||
      amplitude_scale_ == cd{})
    throw DomainError("amplitude_scale must be finite and nonzero");
  if (!dispersion_.temperature_range().contains(crystal_.temperature_c))
    throw DomainError("crystal temperature outside the dispersion model range");
  omega_pc_ = central_omega(pump_);
  sigma_ = sigma_omega(pump_);
  k0_ = grating_wavenumber(crystal_);
  xi_ = chirp_strength(crystal_);
  r_ = crystal_.ratio_r();
}

double phase_mismatch_xt(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx) {
  const auto dk = mismatch_without_grating(signal, idler, ctx);
  if (!dk) throw KinematicsError("evanescent photon in phase_mismatch_xt");
  return ctx.length() * (*dk - ctx.k0());
}

std::complex<double> pmf_integral(double rho, double xi) {
  if (std::abs(xi) < kXiSwitch) {
    const double h = 0.5 * rho;
    const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
    return sinc * cd(std::cos(h), std::sin(h));
  }
  const cd root = std::sqrt(cd(xi, 0.0));
  const cd a = cd(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2) / (2.0 * root);
  const cd p = a * rho;
  const cd q = a * (rho - 2.0 * xi);
  // Re a > 0 for either sign of xi, so the signs of Re p and Re q follow rho and rho - 2 xi.
  const double sp = rho >= 0.0 ? 1.0 : -1.0;
  const double sq = rho - 2.0 * xi >= 0.0 ? 1.0 : -1.0;
  // e^{p^2} (erf p - erf q) with erf w = s (1 - e^{-w^2} erfcx(s w)); p^2 = i rho^2 / 4 xi, p^2 - q^2 = i (rho - xi).
  cd e = -sp * mathkit::erfcx(sp * p) + sq * std::polar(1.0, rho - xi) * mathkit::erfcx(sq * q);
  if (sp != sq) e += (sp - sq) * std::polar(1.0, rho * rho / (4.0 * xi));
  const cd prefactor = kSqrtPi * cd(std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2) / (2.0 * root);
  return prefactor * e;
}

std::complex<double> jaf(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx) {
  const auto dk = mismatch_without_grating(signal, idler, ctx);
  if (!dk) return {};
  const double xt = ctx.length() * (*dk - ctx.k0());
  const double rho = -xt + ctx.ratio_r() * ctx.xi();
  return outside_factor(signal, idler, ctx) * pmf_integral(rho, ctx.xi());
}

std::complex<double> oracle_unchirped(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx,
                                      std::size_t intervals) {
  const auto dk = mismatch_without_grating(signal, idler, ctx);
  if (!dk) return {};
  return outside_factor(signal, idler, ctx) * simpson_over_crystal(*dk, ctx.crystal(), intervals);
}

std::complex<double> oracle_unchirped(const PhotonMode& signal, const PhotonMode& idler, const JafContext& ctx) {
  const auto dk = mismatch_without_grating(signal, idler, ctx);
  if (!dk) return {};
  const double rho = -ctx.length() * (*dk - ctx.k0()) + ctx.ratio_r() * ctx.xi();
  const double phase_span = std::abs(rho) + 2.0 * std::abs(ctx.xi());
  const auto n = static_cast<std::size_t>(std::max(1e4, 128.0 * phase_span));
  const cd coarse = simpson_over_crystal(*dk, ctx.crystal(), n);
  const cd fine = simpson_over_crystal(*dk, ctx.crystal(), 2 * n);
  return outside_factor(signal, idler, ctx) * (fine + (fine - coarse) / 15.0);
}

mathkit::RealGrid2D pmf_map(const mathkit::UniformAxis& omega_s, const mathkit::UniformAxis& omega_i,
                            const JafContext& ctx, bool collinear, double kx) {
  mathkit::validate(omega_s);
  mathkit::validate(omega_i);
  const double k = collinear ? 0.0 : kx;
  mathkit::RealGrid2D out(omega_s, omega_i);
  for (std::size_t a = 0; a < omega_s.count; ++a)
    for (std::size_t b = 0; b < omega_i.count; ++b) {
      const PhotonMode s{omega_s[a], k, 0.0};
      const PhotonMode i{omega_i[b], -k, 0.0};
      const auto dk = mismatch_without_grating(s, i, ctx);
      if (!dk) continue;
      const double rho = -ctx.length() * (*dk - ctx.k0()) + ctx.ratio_r() * ctx.xi();
      out(a, b) = std::abs(pmf_integral(rho, ctx.xi()));
    }
  return out;
}

PmfProfile::PmfProfile(double xi, double margin, double step) : xi_(xi), inv_step_(1.0 / step) {
  if (!(margin > 0.0) || !(step > 0.0)) throw DomainError("PmfProfile: margin and step must be positive");
  rho0_ = std::min(0.0, 2.0 * xi) - margin;
  const double rho1 = std::max(0.0, 2.0 * xi) + margin;
  const auto n = static_cast<std::size_t>(std::ceil((rho1 - rho0_) * inv_step_)) + 1;
  table_.resize(n);
  for (std::size_t k = 0; k < n; ++k) table_[k] = std::norm(pmf_integral(rho0_ + static_cast<double>(k) * step, xi));
}

double PmfProfile::intensity(double rho) const {
  const double x = (rho - rho0_) * inv_step_;
  const double f = std::floor(x);
  if (!(f >= 1.0 && f + 2.0 < static_cast<double>(table_.size()))) return std::norm(pmf_integral(rho, xi_));
  const auto k = static_cast<std::size_t>(f);
  const double t = x - f;
  const double tm = t - 1.0, tp = t + 1.0, t2 = t - 2.0;
  const double w0 = -t * tm * t2 / 6.0;
  const double w1 = tp * tm * t2 / 2.0;
  const double w2 = -tp * t * t2 / 2.0;
  const double w3 = tp * t * tm / 6.0;
  return w0 * table_[k - 1] + w1 * table_[k] + w2 * table_[k + 1] + w3 * table_[k + 2];
}

}  // namespace spdc
