#include "driftlab/spectral/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftlab {

double lq_norm(const Field& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must lie in [1, inf]");
  if (!f.all_finite()) throw std::domain_error("lq_norm: non-finite sample");
  if (std::isinf(q)) return f.max_abs();
  const double w = f.grid().dx() * f.grid().dx();
  double sum = 0.0;
  if (q == 1.0) {
    for (double v : f.values()) sum += std::abs(v);
    return sum * w;
  }
  if (q == 2.0) {
    for (double v : f.values()) sum += v * v;
    return std::sqrt(sum * w);
  }
  for (double v : f.values()) sum += std::pow(std::abs(v), q);
  return std::pow(sum * w, 1.0 / q);
}

double tail_mass(const Field& f) {
  const Grid& g = f.grid();
  const double edge = 0.4 * g.length();
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const bool row_out = std::abs(g.coordinate(i)) >= edge;
    for (std::size_t j = 0; j < g.n(); ++j) {
      const double a = std::abs(f(i, j));
      total += a;
      if (row_out || std::abs(g.coordinate(j)) >= edge) tail += a;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

MomentSet moments(const Field& f, FirstMomentSign sign) {
  const Grid& g = f.grid();
  const double w = g.dx() * g.dx();
  MomentSet m;
  m.sign = sign;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s_abs2 = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double x1 = g.coordinate(i);
    for (std::size_t j = 0; j < g.n(); ++j) {
      const double x2 = g.coordinate(j);
      const double v = f(i, j);
      s0 += v;
      s1 += x1 * v;
      s2 += x2 * v;
      s_abs2 += (x1 * x1 + x2 * x2) * std::abs(v);
    }
  }
  const double sgn = sign == FirstMomentSign::negated ? -1.0 : 1.0;
  m.m0 = s0 * w;
  m.m1 = {sgn * s1 * w, sgn * s2 * w};
  m.m2 = s_abs2 * w;
  m.tail_mass = tail_mass(f);
  return m;
}

SecondMoments second_moments(const Field& f) {
  const Grid& g = f.grid();
  const double w = g.dx() * g.dx();
  SecondMoments s;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double x1 = g.coordinate(i);
    for (std::size_t j = 0; j < g.n(); ++j) {
      const double x2 = g.coordinate(j);
      const double v = f(i, j);
      s.xx += x1 * x1 * v;
      s.xy += x1 * x2 * v;
      s.yy += x2 * x2 * v;
    }
  }
  s.xx *= w;
  s.xy *= w;
  s.yy *= w;
  return s;
}

bool dealias_keeps(const Grid& grid, std::size_t i, std::size_t j) {
  const long cutoff = static_cast<long>(grid.n() / 3);
  return std::abs(grid.mode_number(i)) <= cutoff && std::abs(grid.mode_number(j)) <= cutoff;
}

Spectrum dealias(Spectrum s) {
  const Grid& g = s.grid();
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.spectral_cols(); ++j) {
      if (!dealias_keeps(g, i, j)) s(i, j) = 0.0;
    }
  }
  return s;
}

double inner_product(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  double sum = 0.0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum * f.grid().dx() * f.grid().dx();
}

double skew_pairing(const Field& f, const Field& g, const MultiplierOp& op) {
  require_same_grid(f.grid(), g.grid(), "skew_pairing");
  return inner_product(f, apply_multiplier(op, g));
}

}  // namespace driftlab
