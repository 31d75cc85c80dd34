#pragma once

#include <numbers>

// Internal unit system: lengths in um, times in fs, angular frequency in rad/fs,
// wavenumbers in rad/um, temperatures in degrees Celsius.
namespace spdc::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Speed of light in vacuum, um/fs.
inline constexpr double kSpeedOfLight = 0.299792458;

constexpr double omega_from_wavelength(double lambda_um) { return kTwoPi * kSpeedOfLight / lambda_um; }
constexpr double wavelength_from_omega(double omega) { return kTwoPi * kSpeedOfLight / omega; }

/// Quadratic spectral phase in s^2 to fs^2.
constexpr double s2_to_fs2(double value_s2) { return value_s2 * 1e30; }

}  // namespace spdc::units
