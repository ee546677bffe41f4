#include "driftlab/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace driftlab {

Field::Field(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field: sample count does not match grid");
  }
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_, "field +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_, "field -=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Spectrum::Spectrum(Grid grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatch(std::string(where) + ": grid mismatch (N=" + std::to_string(a.n()) + ", L=" +
                       std::to_string(a.length()) + " vs N=" + std::to_string(b.n()) +
                       ", L=" + std::to_string(b.length()) + ")");
  }
}

}  // namespace driftlab
