#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "driftlab/spectral/grid.hpp"

namespace driftlab {

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real scalar samples on a Grid, row-major with the first axis slowest.
class Field {
 public:
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<double> values);

  template <class F>
  static Field sample(const Grid& grid, F&& fn) {
    Field out(grid);
    const std::size_t n = grid.n();
    for (std::size_t i = 0; i < n; ++i) {
      const double x1 = grid.coordinate(i);
      for (std::size_t j = 0; j < n; ++j) out.values_[i * n + j] = fn(x1, grid.coordinate(j));
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_.n() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * grid_.n() + j]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

struct VectorField {
  Field x1;
  Field x2;
};

/// Half-spectrum (N x (N/2+1)) of a real field. Coefficients are the raw
/// unnormalised DFT unless produced by the *_continuous helpers in fft.hpp.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);

  const Grid& grid() const { return grid_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::span<std::complex<double>> coeffs() { return coeffs_; }

  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return coeffs_[i * grid_.spectral_cols() + j];
  }
  std::complex<double>& operator()(std::size_t i, std::size_t j) {
    return coeffs_[i * grid_.spectral_cols() + j];
  }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace driftlab
