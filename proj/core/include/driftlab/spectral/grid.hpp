#pragma once

#include <array>
#include <cstddef>

namespace driftlab {

using Vec2 = std::array<double, 2>;

/// Periodic square box [-L/2, L/2)^2 sampled by N points per axis.
///
/// Physical sample (i, j) sits at x = (-L/2 + i*dx, -L/2 + j*dx), so the box
/// centre is the sample (N/2, N/2). Axis index m in [0, N) carries the signed
/// mode number m for m < N/2 and m - N otherwise; m = N/2 is the unpaired
/// Nyquist mode with wavenumber -(N/2)(2*pi/L).
class Grid {
 public:
  Grid(std::size_t n, double length);

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / static_cast<double>(n_); }
  double dk() const;

  std::size_t size() const { return n_ * n_; }
  /// Columns of the half-spectrum stored by real-to-complex transforms.
  std::size_t spectral_cols() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return n_ * spectral_cols(); }

  double coordinate(std::size_t i) const {
    return -0.5 * length_ + static_cast<double>(i) * dx();
  }

  long mode_number(std::size_t index) const {
    const auto m = static_cast<long>(index);
    const auto half = static_cast<long>(n_ / 2);
    return m < half ? m : m - static_cast<long>(n_);
  }
  double wavenumber(std::size_t index) const {
    return dk() * static_cast<double>(mode_number(index));
  }
  bool is_nyquist(std::size_t index) const { return index == n_ / 2; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  std::size_t n_;
  double length_;
};

/// Validating constructor: N must be a power of two >= 8 and L > 0.
Grid make_grid(std::size_t n, double length);

}  // namespace driftlab
