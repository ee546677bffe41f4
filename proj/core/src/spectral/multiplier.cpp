#include "driftlab/spectral/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include "driftlab/spectral/fft.hpp"

namespace driftlab {

using cd = std::complex<double>;

MultiplierOp::MultiplierOp(std::string name, Symbol symbol, cd zero_mode, bool odd)
    : name_(std::move(name)), symbol_(std::move(symbol)), zero_mode_(zero_mode), odd_(odd) {}

cd MultiplierOp::at(const Grid& grid, std::size_t i, std::size_t j) const {
  if (i == 0 && j == 0) return zero_mode_;
  if (odd_ && (grid.is_nyquist(i) || grid.is_nyquist(j))) return 0.0;
  return symbol_(grid.wavenumber(i), grid.wavenumber(j));
}

void MultiplierOp::check_hermitian(const Grid& grid) const {
  const std::size_t n = grid.n();
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ic = (n - i) % n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t jc = (n - j) % n;
      const cd m = at(grid, i, j);
      scale = std::max(scale, std::abs(m));
      worst = std::max(worst, std::abs(m - std::conj(at(grid, ic, jc))));
    }
  }
  if (worst > 1e-10 * std::max(scale, 1e-300)) {
    throw std::logic_error("multiplier '" + name_ +
                           "' is not conjugate symmetric on the grid; real output would be lost");
  }
}

namespace multipliers {

MultiplierOp partial(int axis) {
  return MultiplierOp(axis == 0 ? "d1" : "d2",
                      [axis](double k1, double k2) { return cd(0.0, axis == 0 ? k1 : k2); }, 0.0,
                      true);
}

MultiplierOp riesz(int axis) {
  return MultiplierOp(axis == 0 ? "R1" : "R2",
                      [axis](double k1, double k2) {
                        const double k = std::hypot(k1, k2);
                        return cd(0.0, (axis == 0 ? k1 : k2) / k);
                      },
                      0.0, true);
}

VectorMultiplierOp gradient() { return {partial(0), partial(1)}; }

VectorMultiplierOp gradient_perp() {
  MultiplierOp minus_d2("-d2", [](double, double k2) { return cd(0.0, -k2); }, 0.0, true);
  return {minus_d2, partial(0)};
}

VectorMultiplierOp riesz_vector() { return {riesz(0), riesz(1)}; }

VectorMultiplierOp riesz_perp() {
  MultiplierOp minus_r2("-R2",
                        [](double k1, double k2) { return cd(0.0, -k2 / std::hypot(k1, k2)); },
                        0.0, true);
  return {minus_r2, riesz(0)};
}

MultiplierOp laplacian() {
  return MultiplierOp("Laplacian", [](double k1, double k2) { return cd(-(k1 * k1 + k2 * k2)); },
                      0.0, false);
}

MultiplierOp lambda() {
  return MultiplierOp("Lambda", [](double k1, double k2) { return cd(std::hypot(k1, k2)); }, 0.0,
                      false);
}

MultiplierOp heat(double t) {
  return MultiplierOp("heat", [t](double k1, double k2) { return cd(std::exp(-t * (k1 * k1 + k2 * k2))); },
                      1.0, false);
}

MultiplierOp heat_laplacian_power(int k, double t) {
  return MultiplierOp("heat_lap_pow",
                      [k, t](double k1, double k2) {
                        const double q = k1 * k1 + k2 * k2;
                        return cd(std::pow(q, k) * std::exp(-t * q));
                      },
                      k == 0 ? 1.0 : 0.0, false);
}

}  // namespace multipliers

Spectrum apply(const MultiplierOp& op, const Spectrum& s) {
  const Grid& g = s.grid();
  Spectrum out(g);
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.spectral_cols(); ++j) out(i, j) = op.at(g, i, j) * s(i, j);
  }
  return out;
}

Field apply_multiplier(const MultiplierOp& op, const Field& f) {
  op.check_hermitian(f.grid());
  Field out = inverse(apply(op, forward(f)));
  if (!out.all_finite()) throw std::runtime_error("multiplier '" + op.name() + "' produced non-finite samples");
  return out;
}

VectorField apply_multiplier(const VectorMultiplierOp& op, const Field& f) {
  op.c1.check_hermitian(f.grid());
  op.c2.check_hermitian(f.grid());
  const Spectrum s = forward(f);
  return {inverse(apply(op.c1, s)), inverse(apply(op.c2, s))};
}

}  // namespace driftlab
