#include <doctest.h>

#include <cmath>

#include "spdc/crystal.hpp"
#include "spdc/errors.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {

const DispersionModel& linbo3() {
  static const DispersionModel m = DispersionModel::load(SPDC_DEFAULT_MATERIAL);
  return m;
}

// mpmath, 40 digits, from the coefficient file
constexpr double kPeriodAt25 = 20.33456286091028154;
constexpr double kPeriodAt230 = 19.46980767022250200;

}  // namespace

TEST_CASE("local spatial frequency") {
  CrystalConfig c;
  c.chirp_D = 2e-6;
  const double k0 = units::kTwoPi / c.period_um;
  CHECK(local_spatial_frequency(c, -c.z0_um) == k0);
  CHECK(local_spatial_frequency(c, 0.0) == doctest::Approx(k0 + 5e-3).epsilon(1e-14));
  c.chirp_D = 0.0;
  CHECK(local_spatial_frequency(c, -1234.5) == k0);
  CHECK_THROWS_AS(local_spatial_frequency(c, 1.0), DomainError);
  CHECK_THROWS_AS(local_spatial_frequency(c, -5000.1), DomainError);
}

TEST_CASE("K(z) is affine") {
  CrystalConfig c;
  c.chirp_D = -5e-6;
  const double z1 = -4321.0, z2 = -17.0;
  CHECK(local_spatial_frequency(c, z1) + local_spatial_frequency(c, z2) ==
        doctest::Approx(2.0 * local_spatial_frequency(c, 0.5 * (z1 + z2))).epsilon(1e-12));
}

TEST_CASE("chirp strength") {
  CrystalConfig c;
  CHECK(chirp_strength(c) == 0.0);
  c.chirp_D = 2e-6;
  CHECK(chirp_strength(c) == doctest::Approx(50.0).epsilon(1e-14));
  c.chirp_D = -5e-6;
  CHECK(chirp_strength(c) == doctest::Approx(-125.0).epsilon(1e-14));
}

TEST_CASE("central period") {
  const double p25 = solve_central_period(linbo3(), 0.8, 25.0);
  CHECK(std::abs(p25 / 20.33 - 1.0) < 0.02);
  CHECK(p25 == doctest::Approx(kPeriodAt25).epsilon(1e-12));
  CHECK(solve_central_period(linbo3(), 0.8, 230.0) == doctest::Approx(kPeriodAt230).epsilon(1e-12));
  CHECK_THROWS_AS(solve_central_period(DispersionModel::constant_index(2.2), 0.8, 25.0), InfeasibleError);
  for (double t : {25.0, 100.0, 230.0}) {
    const double p = solve_central_period(linbo3(), 0.8, t);
    CHECK(std::abs(collinear_degenerate_mismatch(linbo3(), 0.8, t, p)) < 1e-10);
  }
}

TEST_CASE("crystal validation") {
  CrystalConfig c;
  CHECK_NOTHROW(validate(c));
  c.length_um = 0.0;
  CHECK_THROWS_AS(validate(c), DomainError);
  c = {};
  // K would turn negative at the exit face
  c.chirp_D = -1e-3;
  CHECK_THROWS_AS(validate(c), DomainError);
  c = {};
  c.poled = false;
  c.chirp_D = 1e-6;
  CHECK_THROWS_AS(validate(c), DomainError);
  c.chirp_D = 0.0;
  CHECK_NOTHROW(validate(c));
  CHECK(grating_wavenumber(c) == 0.0);
}

TEST_CASE("optional period expansion") {
  CrystalConfig c;
  c.temperature_c = 230.0;
  CHECK(effective_period(c) == c.period_um);
  c.thermal_expansion = true;
  const double dt = 205.0;
  CHECK(effective_period(c) ==
        doctest::Approx(c.period_um * (1.0 + kPeriodExpansionLinear * dt + kPeriodExpansionQuadratic * dt * dt)));
  c.temperature_c = c.period_reference_c;
  CHECK(effective_period(c) == c.period_um);
}
