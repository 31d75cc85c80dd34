#include "spdc/mathkit/cerf.hpp"

#include <cmath>
#include <numbers>

#include "spdc/errors.hpp"

namespace spdc::mathkit {

namespace {

using cd = std::complex<double>;

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Region map for Re z >= 0. The Maclaurin series loses about exp(2 Re(z)^2) |z| to cancellation,
// so it is used only close to the imaginary axis or for small |z|; the continued fraction converges
// in a few hundred terms or fewer once Re z >= 0.5.
constexpr double kSeriesStrip = 0.5;
constexpr double kSeriesRe = 1.5;
constexpr double kSeriesRadius = 6.0;
constexpr double kMaxSeriesIm = 26.0;

bool use_series(cd z) {
  return z.real() < kSeriesStrip || (z.real() < kSeriesRe && std::abs(z) < kSeriesRadius);
}

// erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
cd erf_series(cd z) {
  const cd minus_z2 = -z * z;
  cd power = z;
  cd sum = z;
  for (int n = 1; n < 4000; ++n) {
    power *= minus_z2 / static_cast<double>(n);
    const cd term = power / static_cast<double>(2 * n + 1);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// erfcx(z) = 1/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), modified Lentz, Re z > 0.
cd erfcx_continued_fraction(cd z) {
  constexpr double tiny = 1e-300;
  cd f = z;
  cd c = f;
  cd d = 0.0;
  for (int n = 1; n < 20000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    const cd delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::numbers::inv_sqrtpi / f;
}

// erf for Re z >= 0.
cd erf_right_half(cd z) {
  if (use_series(z)) return erf_series(z);
  return 1.0 - std::exp(-z * z) * erfcx_continued_fraction(z);
}

}  // namespace

cd cerf(cd z) {
  const double x = std::abs(z.real());
  const double y = std::abs(z.imag());
  if (!(x <= 30.0 && y <= 30.0) || !(y * y - x * x < 700.0))
    throw AccuracyError("cerf: argument outside the working range");
  if (z.real() < 0.0) return -erf_right_half(-z);
  return erf_right_half(z);
}

cd erfcx(cd z) {
  if (!(z.real() >= 0.0)) throw AccuracyError("erfcx: requires Re z >= 0");
  if (use_series(z)) {
    if (!(std::abs(z.imag()) <= kMaxSeriesIm)) throw AccuracyError("erfcx: |Im z| too large near the imaginary axis");
    return std::exp(z * z) * (1.0 - erf_series(z));
  }
  return erfcx_continued_fraction(z);
}

}  // namespace spdc::mathkit
