#pragma once

#include <string>
#include <string_view>

namespace spdc {

/// One down-converted photon: angular frequency (rad/fs) and transverse momentum (rad/um).
struct PhotonMode {
  double omega = 0.0;
  double kx = 0.0;
  double ky = 0.0;
};

struct ClosedRange {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const ClosedRange&) const = default;
};

/// Coefficients of the temperature-dependent Sellmeier form
///
///   n^2 = a1 + b1 f + (a2 + b2 f) / (l^2 - (a3 + b3 f)^2) + (a4 + b4 f) / (l^2 - a5^2) - a6 l^2
///   f   = (T - t_offset) (T + t_shift)
///
/// with l in um and T in degrees Celsius.
struct SellmeierCoefficients {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0, a6 = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
  double t_offset = 0.0;
  double t_shift = 0.0;

  double temperature_function(double celsius) const { return (celsius - t_offset) * (celsius + t_shift); }
};

/// Extraordinary refractive index of a uniaxial crystal and the wavevector kinematics built on it.
/// Immutable; all members are pure and safe to call concurrently.
class DispersionModel {
 public:
  DispersionModel(std::string name, SellmeierCoefficients coefficients, ClosedRange wavelength_um,
                  ClosedRange temperature_c);

  /// Material file: `key = value` lines, `#` comments. See README for the key list.
  static DispersionModel parse(std::string_view text, const std::string& source = "<memory>");
  static DispersionModel load(const std::string& path);

  /// Dispersionless medium with n = `index` everywhere. Used to probe kinematics in isolation.
  static DispersionModel constant_index(double index);

  double refractive_index(double lambda_um, double temperature_c) const;
  /// |k| = n(2 pi c / omega, T) omega / c, rad/um.
  double wavevector_magnitude(double omega, double temperature_c) const;
  /// Forward-propagating longitudinal wavenumber. Throws KinematicsError for evanescent modes.
  double longitudinal_k(const PhotonMode& mode, double temperature_c) const;

  bool covers_omega(double omega) const;

  const std::string& name() const { return name_; }
  const SellmeierCoefficients& coefficients() const { return coefficients_; }
  ClosedRange wavelength_range() const { return wavelength_um_; }
  ClosedRange temperature_range() const { return temperature_c_; }

 private:
  void check_well_posed() const;

  std::string name_;
  SellmeierCoefficients coefficients_;
  ClosedRange wavelength_um_;
  ClosedRange temperature_c_;
};

}  // namespace spdc
