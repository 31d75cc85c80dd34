#include "spdc/mathkit/grid.hpp"

#include <cmath>

namespace spdc::mathkit {

void validate(const UniformAxis& axis) {
  if (axis.count < 2) throw std::invalid_argument("axis '" + axis.name + "' needs at least 2 samples");
  if (!(std::isfinite(axis.min) && std::isfinite(axis.max) && axis.min < axis.max))
    throw std::invalid_argument("axis '" + axis.name + "' must satisfy min < max");
}

}  // namespace spdc::mathkit
