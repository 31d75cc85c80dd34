#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "../common/series_oracle.hpp"
#include "spdc/errors.hpp"
#include "spdc/mathkit/cerf.hpp"

using spdc::mathkit::cerf;
using spdc::mathkit::erfcx;
using cd = std::complex<double>;

TEST_CASE("cerf basics") {
  CHECK(cerf(cd(0.0, 0.0)) == cd(0.0, 0.0));
  // mpmath, 40 digits
  const cd ref(0.6426129148548205, 0.4578813944351922);
  CHECK(std::abs(cerf(cd(0.5, 0.5)) - ref) / std::abs(ref) < 1e-13);
}

TEST_CASE("cerf symmetries") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 500; ++n) {
    const cd z(u(rng), u(rng));
    const cd w = cerf(z);
    CHECK(std::abs(cerf(-z) + w) <= 1e-15 * std::abs(w));
    CHECK(std::abs(cerf(std::conj(z)) - std::conj(w)) <= 1e-15 * std::abs(w));
  }
}

TEST_CASE("cerf on the real axis") {
  for (int n = 0; n <= 1200; ++n) {
    const double x = -6.0 + 0.01 * n;
    const cd w = cerf(cd(x, 0.0));
    CHECK(w.real() == doctest::Approx(std::erf(x)).epsilon(1e-14));
    CHECK(std::abs(w.imag()) < 1e-14);
  }
}

TEST_CASE("cerf against the 50-digit series on |z| <= 6") {
  double worst = 0.0;
  constexpr int n = 50;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cd z(-6.0 + 12.0 * a / (n - 1), -6.0 + 12.0 * b / (n - 1));
      if (std::abs(z) > 6.0) continue;
      const cd ref = spdc::testing::erf_series_oracle(z);
      worst = std::max(worst, std::abs(cerf(z) - ref) / std::abs(ref));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("cerf refuses arguments it cannot resolve") {
  CHECK_THROWS_AS(cerf(cd(0.0, 40.0)), spdc::AccuracyError);
  CHECK_THROWS_AS(cerf(cd(std::nan(""), 0.0)), spdc::AccuracyError);
}

TEST_CASE("erfcx") {
  CHECK(erfcx(cd(0.0, 0.0)) == cd(1.0, 0.0));
  // large argument: erfcx(z) ~ 1/(sqrt(pi) z) (1 - 1/(2 z^2))
  const cd z(40.0, 25.0);
  const cd asym = 1.0 / (std::sqrt(M_PI) * z) * (1.0 - 0.5 / (z * z) + 0.75 / (z * z * z * z));
  CHECK(std::abs(erfcx(z) - asym) / std::abs(asym) < 1e-9);
  for (double x : {0.1, 1.0, 3.0, 8.0})
    CHECK(erfcx(cd(x, 0.0)).real() == doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-13));
  // consistency with cerf where both are well conditioned
  const cd w(1.2, -0.7);
  CHECK(std::abs(erfcx(w) - std::exp(w * w) * (1.0 - cerf(w))) < 1e-13);
  CHECK_THROWS_AS(erfcx(cd(-1.0, 0.0)), spdc::AccuracyError);
}
