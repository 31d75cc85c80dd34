#pragma once

// erf(z) from its Maclaurin series in 50-digit arithmetic. Reference values for the cerf tests.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <complex>

namespace spdc::testing {

inline std::complex<double> erf_series_oracle(std::complex<double> z) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big x = z.real(), y = z.imag();
  // z^2
  const big zr2 = x * x - y * y, zi2 = 2 * x * y;
  // running power p = (-1)^n z^(2n+1) / n!
  big pr = x, pi = y;
  big sr = x, si = y;
  const big tiny = boost::multiprecision::pow(big(10), -45);
  for (int n = 1; n < 2000; ++n) {
    const big nr = -(pr * zr2 - pi * zi2) / n;
    const big ni = -(pr * zi2 + pi * zr2) / n;
    pr = nr;
    pi = ni;
    const big tr = pr / (2 * n + 1), ti = pi / (2 * n + 1);
    sr += tr;
    si += ti;
    if (n > 8 && abs(tr) + abs(ti) < tiny * (abs(sr) + abs(si))) break;
  }
  const big scale = 2 / sqrt(boost::math::constants::pi<big>());
  return {static_cast<double>(sr * scale), static_cast<double>(si * scale)};
}

}  // namespace spdc::testing
