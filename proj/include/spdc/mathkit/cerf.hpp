#pragma once

#include <complex>

namespace spdc::mathkit {

/// Complex error function erf(z).
///
/// Working range: |Re z| <= 30, |Im z| <= 30 and Im(z)^2 - Re(z)^2 < 700 (beyond that |erf z|
/// overflows a double). Relative accuracy is about 1e-13 or better inside the range, except close to the
/// non-trivial zeros of erf where only the absolute error stays at that level. Throws AccuracyError outside.
std::complex<double> cerf(std::complex<double> z);

/// Scaled complementary error function erfcx(z) = exp(z^2) erfc(z) for Re z >= 0.
///
/// No upper bound on |z| when Re z >= 0.5. Closer to the imaginary axis the evaluation needs
/// |Im z| <= 26. Throws AccuracyError for Re z < 0 or outside that strip.
std::complex<double> erfcx(std::complex<double> z);

}  // namespace spdc::mathkit
