#pragma once

#include <cstddef>
#include <string>

#include "spdc/mathkit/grid.hpp"

namespace spdc::mathkit {

/// Name and unit for each output (conjugate) axis of dft2.
struct ConjugateAxes {
  std::string name1 = "conj1";
  std::string unit1;
  std::string name2 = "conj2";
  std::string unit2;
};

/// Discrete approximation of
///
///   F(b, d) = 1/(2 pi)^2  \int da dc  g(a, c) exp(-i (a b + c d))
///
/// for g sampled on `input`. The sample measure (step1 * step2) and the phase from the axes' non-zero
/// origins are included. The input is zero-padded to `pad_factor` times its length along both axes
/// (finer output sampling, same output extent). Output axes are centred on zero with
/// spacing 2 pi / (padded count * input step) and count = padded count.
///
/// Parseval: sum |g|^2 da dc = (2 pi)^2 sum |F|^2 db dd.
ComplexGrid2D dft2(const ComplexGrid2D& input, const ConjugateAxes& axes, std::size_t pad_factor = 1);

/// Convenience overload for real-valued input.
ComplexGrid2D dft2(const RealGrid2D& input, const ConjugateAxes& axes, std::size_t pad_factor = 1);

}  // namespace spdc::mathkit
