#include "spdc/mathkit/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace spdc::mathkit {

namespace {

using cd = std::complex<double>;

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

UniformAxis conjugate_axis(const UniformAxis& in, std::size_t padded, const std::string& name,
                           const std::string& unit) {
  const double step = 2.0 * std::numbers::pi / (static_cast<double>(padded) * in.step());
  const auto half = static_cast<double>(padded / 2);
  return UniformAxis{name, unit, -half * step, (static_cast<double>(padded - 1) - half) * step, padded};
}

// exp(+2 pi i (m * half mod n) / n), exact index arithmetic for the pre-twiddle.
cd origin_twiddle(std::size_t m, std::size_t half, std::size_t n) {
  const std::size_t r = (m % n) * (half % n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace

ComplexGrid2D dft2(const ComplexGrid2D& input, const ConjugateAxes& names, std::size_t pad_factor) {
  validate(input.axis1());
  validate(input.axis2());
  if (pad_factor < 1) throw std::invalid_argument("dft2: pad_factor must be >= 1");
  const std::size_t n1 = input.rows(), n2 = input.cols();
  const std::size_t m1 = n1 * pad_factor, m2 = n2 * pad_factor;
  const std::size_t h1 = m1 / 2, h2 = m2 / 2;

  std::unique_ptr<fftw_complex, FftwFree> buffer(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m1 * m2)));
  if (!buffer) throw std::bad_alloc();
  auto* data = reinterpret_cast<cd*>(buffer.get());
  std::fill(data, data + m1 * m2, cd{});

  std::unique_ptr<fftw_plan_s, PlanDestroy> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_2d(static_cast<int>(m1), static_cast<int>(m2), buffer.get(), buffer.get(),
                                FFTW_FORWARD, FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("dft2: FFTW planning failed");

  // Shift the output origin to -h * step: multiply sample m by exp(-i m da b0).
  for (std::size_t i = 0; i < n1; ++i) {
    const cd t1 = origin_twiddle(i, h1, m1);
    for (std::size_t j = 0; j < n2; ++j) data[i * m2 + j] = input(i, j) * t1 * origin_twiddle(j, h2, m2);
  }
  fftw_execute(plan.get());

  UniformAxis out1 = conjugate_axis(input.axis1(), m1, names.name1, names.unit1);
  UniformAxis out2 = conjugate_axis(input.axis2(), m2, names.name2, names.unit2);
  const double measure = input.axis1().step() * input.axis2().step() / (4.0 * std::numbers::pi * std::numbers::pi);
  ComplexGrid2D out(out1, out2);
  const double a0 = input.axis1().min, c0 = input.axis2().min;
  for (std::size_t p = 0; p < m1; ++p) {
    const cd phase1 = std::polar(measure, -a0 * out1[p]);
    for (std::size_t q = 0; q < m2; ++q) out(p, q) = data[p * m2 + q] * phase1 * std::polar(1.0, -c0 * out2[q]);
  }
  return out;
}

ComplexGrid2D dft2(const RealGrid2D& input, const ConjugateAxes& names, std::size_t pad_factor) {
  ComplexGrid2D complex_input(input.axis1(), input.axis2());
  for (std::size_t k = 0; k < input.values().size(); ++k) complex_input.values()[k] = input.values()[k];
  return dft2(complex_input, names, pad_factor);
}

}  // namespace spdc::mathkit
