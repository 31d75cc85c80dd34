#include <doctest.h>

#include <cmath>
#include <random>
#include <cstring>

#include "spdc/dispersion.hpp"
#include "spdc/errors.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

const DispersionModel& linbo3() {
  static const DispersionModel m = DispersionModel::load(SPDC_DEFAULT_MATERIAL);
  return m;
}

// 40-digit evaluation of the coefficient file (mpmath)
constexpr double kN08At25 = 2.175802697439535264;
constexpr double kN16At25 = 2.136460814091855185;
constexpr double kK16At25 = 8.389861997791801572;
constexpr double kKz16At25 = 8.386136437119958988;

}  // namespace

TEST_CASE("refractive index regression at 0.8 and 1.6 um") {
  CHECK(linbo3().refractive_index(0.8, 25.0) == doctest::Approx(kN08At25).epsilon(1e-14));
  CHECK(linbo3().refractive_index(1.6, 25.0) == doctest::Approx(kN16At25).epsilon(1e-14));
}

TEST_CASE("validity bounds") {
  const auto& m = linbo3();
  CHECK(std::isfinite(m.refractive_index(m.wavelength_range().lo, 25.0)));
  CHECK(std::isfinite(m.refractive_index(m.wavelength_range().hi, 25.0)));
  CHECK_THROWS_AS(m.refractive_index(0.1, 25.0), DomainError);
  CHECK_THROWS_WITH_AS(m.refractive_index(0.1, 25.0), doctest::Contains("lower bound"), DomainError);
  CHECK_THROWS_WITH_AS(m.refractive_index(9.0, 25.0), doctest::Contains("upper bound"), DomainError);
  CHECK_THROWS_WITH_AS(m.refractive_index(1.0, 400.0), doctest::Contains("temperature"), DomainError);
}

TEST_CASE("wavevector magnitude") {
  const double w = units::omega_from_wavelength(0.8);
  CHECK(linbo3().wavevector_magnitude(w, 25.0) ==
        doctest::Approx(kN08At25 * w / units::kSpeedOfLight).epsilon(1e-14));
  const double w16 = units::omega_from_wavelength(1.6);
  CHECK(linbo3().wavevector_magnitude(w16, 25.0) == doctest::Approx(kK16At25).epsilon(1e-14));

  const auto stub = DispersionModel::constant_index(2.0);
  CHECK(stub.wavevector_magnitude(2.0 * w, 25.0) == doctest::Approx(2.0 * stub.wavevector_magnitude(w, 25.0)));
}

TEST_CASE("longitudinal k") {
  const double w16 = units::omega_from_wavelength(1.6);
  const auto& m = linbo3();
  CHECK(m.longitudinal_k({w16, 0.0, 0.0}, 25.0) == m.wavevector_magnitude(w16, 25.0));
  CHECK(m.longitudinal_k({w16, 0.25, 0.0}, 25.0) == doctest::Approx(kKz16At25).epsilon(1e-14));
  CHECK_THROWS_AS(m.longitudinal_k({w16, m.wavevector_magnitude(w16, 25.0), 0.0}, 25.0), KinematicsError);
}

TEST_CASE("longitudinal and transverse components recombine") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.45, 6.5), temp(20.0, 250.0), frac(-0.7, 0.7);
  const auto& m = linbo3();
  for (int n = 0; n < 1000; ++n) {
    const double w = units::omega_from_wavelength(lam(rng));
    const double t = temp(rng);
    const double k = m.wavevector_magnitude(w, t);
    const PhotonMode mode{w, frac(rng) * k, frac(rng) * k};
    const double kz = m.longitudinal_k(mode, t);
    CHECK((kz * kz + mode.kx * mode.kx + mode.ky * mode.ky) == doctest::Approx(k * k).epsilon(1e-12));
  }
}

TEST_CASE("index is smooth on 0.4-4 um") {
  const auto& m = linbo3();
  constexpr int n = 10000;
  const double h = (4.0 - 0.4) / (n - 1);
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double l = 0.4 + i * h;
    const double d2 = (m.refractive_index(l + h, 25.0) - 2.0 * m.refractive_index(l, 25.0) +
                       m.refractive_index(l - h, 25.0)) /
                      (h * h);
    REQUIRE(std::isfinite(d2));
    worst = std::max(worst, std::abs(d2));
  }
  // |n''| peaks near the UV edge at a few per um^2; a pole would blow this up
  CHECK(worst < 20.0);
}

TEST_CASE("refractive index is pure") {
  const double a = linbo3().refractive_index(1.234, 77.0);
  const double b = linbo3().refractive_index(1.234, 77.0);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("material file parsing") {
  const std::string base =
      "form = sellmeier-temperature\na1 = 4\nlambda_min_um = 0.5\nlambda_max_um = 2\n"
      "temperature_min_c = 0\ntemperature_max_c = 100\n";
  const auto m = DispersionModel::parse(base, "stub");
  CHECK(m.refractive_index(1.0, 50.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(DispersionModel::parse(base + "bogus = 1\n", "stub"), ParseError);
  CHECK_THROWS_AS(DispersionModel::parse("a1 = 4\n", "stub"), ParseError);
  try {
    DispersionModel::parse(base + "a7 = 1\n", "stub");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
  }
  // a UV pole at 1 um inside the range
  CHECK_THROWS_AS(DispersionModel::parse(base + "a2 = 0.1\na3 = 1.0\n", "stub"), DomainError);
}
