#include "driftlab/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace driftlab {

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {}

double Grid::dk() const { return 2.0 * std::numbers::pi / length_; }

Grid make_grid(std::size_t n, double length) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid: N must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid: box length must be positive and finite");
  }
  return Grid(n, length);
}

}  // namespace driftlab
