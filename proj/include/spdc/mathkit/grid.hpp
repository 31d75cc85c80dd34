#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spdc::mathkit {

/// Uniformly sampled, strictly increasing axis: x_i = min + i (max - min) / (count - 1).
struct UniformAxis {
  std::string name;
  std::string unit;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double step() const { return count > 1 ? (max - min) / static_cast<double>(count - 1) : 0.0; }
  double operator[](std::size_t i) const {
    return i + 1 == count ? max : min + static_cast<double>(i) * step();
  }
  std::vector<double> samples() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (*this)[i];
    return out;
  }
  bool operator==(const UniformAxis&) const = default;
};

/// Throws std::invalid_argument unless count >= 2 and min < max (both finite).
void validate(const UniformAxis& axis);

/// Row-major field sampled on axis1 x axis2; element (i, j) sits at (axis1[i], axis2[j]).
template <class T>
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(UniformAxis axis1, UniformAxis axis2)
      : axis1_(std::move(axis1)), axis2_(std::move(axis2)), values_(axis1_.count * axis2_.count) {}
  Grid2D(UniformAxis axis1, UniformAxis axis2, std::vector<T> values)
      : axis1_(std::move(axis1)), axis2_(std::move(axis2)), values_(std::move(values)) {
    if (values_.size() != axis1_.count * axis2_.count)
      throw std::invalid_argument("Grid2D: value count does not match axes");
  }

  const UniformAxis& axis1() const { return axis1_; }
  const UniformAxis& axis2() const { return axis2_; }
  std::size_t rows() const { return axis1_.count; }
  std::size_t cols() const { return axis2_.count; }

  T& operator()(std::size_t i, std::size_t j) { return values_[i * axis2_.count + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * axis2_.count + j]; }

  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  bool operator==(const Grid2D&) const = default;

 private:
  UniformAxis axis1_;
  UniformAxis axis2_;
  std::vector<T> values_;
};

using RealGrid2D = Grid2D<double>;
using ComplexGrid2D = Grid2D<std::complex<double>>;

/// Sampled function of one variable on a uniform axis.
struct Series1D {
  UniformAxis axis;
  std::vector<double> values;
};

}  // namespace spdc::mathkit
