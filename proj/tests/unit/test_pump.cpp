#include <doctest.h>

#include <cmath>
#include <random>

#include "spdc/errors.hpp"
#include "spdc/pump.hpp"
#include "spdc/units.hpp"

using namespace spdc;

TEST_CASE("sigma from wavelength FWHM") {
  PumpConfig p;
  p.fwhm_um = 0.001;
  const double expected = units::kTwoPi * units::kSpeedOfLight / 0.64 * 0.001 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  CHECK(sigma_omega(p) == doctest::Approx(expected).epsilon(1e-15));
  p.fwhm_um.reset();
  p.sigma_omega = 0.02;
  CHECK(sigma_omega(p) == 0.02);
}

TEST_CASE("envelope") {
  PumpConfig p;
  const double wp = central_omega(p);
  const double s = sigma_omega(p);
  const auto on = envelope(0.4 * wp, 0.6 * wp, p);
  CHECK(on.real() == 1.0);
  CHECK(on.imag() == 0.0);
  CHECK(std::abs(envelope(0.5 * wp + s, 0.5 * wp, p)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  p.beta_fs2 = units::s2_to_fs2(1e-25);
  CHECK(p.beta_fs2 == doctest::Approx(1e5));
  const auto e = envelope(0.5 * wp + s, 0.5 * wp, p);
  CHECK(std::abs(e) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::arg(e) == doctest::Approx(std::remainder(1e5 * s * s, units::kTwoPi)).epsilon(1e-10));
}

TEST_CASE("envelope symmetry and chirp invariance") {
  PumpConfig p;
  PumpConfig chirped = p;
  chirped.beta_fs2 = 1e5;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(1.0, 1.35);
  for (int n = 0; n < 200; ++n) {
    const double a = w(rng), b = w(rng);
    CHECK(std::abs(envelope(a, b, p)) == std::abs(envelope(b, a, p)));
    CHECK(std::abs(envelope(a, b, chirped)) == doctest::Approx(std::abs(envelope(a, b, p))).epsilon(1e-14));
  }
}

TEST_CASE("spatial factor") {
  PumpConfig p;
  CHECK(spatial_factor(0.0, 0.0, p) == 1.0);
  CHECK(spatial_factor(2.0 / p.waist_x_um, 0.0, p) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(spatial_factor(0.02, 0.01, p) == doctest::Approx(std::exp(-5.0 / 4.0)).epsilon(1e-15));
  // depends on the summed momentum only
  const double ks = 0.13, ki = -0.11;
  for (double d : {-0.3, 0.05, 0.2}) CHECK(spatial_factor((ks + d) + (ki - d), 0.0, p) == doctest::Approx(spatial_factor(ks + ki, 0.0, p)));
}

TEST_CASE("pump validation") {
  PumpConfig p;
  CHECK_NOTHROW(validate(p));
  p.sigma_omega = 0.01;
  CHECK_THROWS_AS(validate(p), DomainError);
  p.fwhm_um.reset();
  CHECK_NOTHROW(validate(p));
  p.sigma_omega.reset();
  CHECK_THROWS_AS(validate(p), DomainError);
  p = {};
  p.waist_y_um = 0.0;
  CHECK_THROWS_AS(validate(p), DomainError);
}
