#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "driftlab/spectral/field.hpp"

namespace driftlab::test {

inline double heat_kernel(double t, double x1, double x2) {
  return std::exp(-(x1 * x1 + x2 * x2) / (4.0 * t)) / (4.0 * std::numbers::pi * t);
}

inline Field sample_heat(const Grid& g, double t, double c1 = 0.0, double c2 = 0.0) {
  return Field::sample(g, [&](double x1, double x2) { return heat_kernel(t, x1 - c1, x2 - c2); });
}

/// Unit-mass discrete delta at the box centre.
inline Field delta(const Grid& g) {
  Field f(g);
  f(g.n() / 2, g.n() / 2) = 1.0 / (g.dx() * g.dx());
  return f;
}

/// A few signed Gaussian bumps with seeded random parameters, narrow enough
/// that the periodic extension is smooth to rounding (needs L / dx >= ~100).
inline Field random_smooth(const Grid& g, std::mt19937& rng, int bumps = 4) {
  const double s = g.length() / 30.0;
  std::uniform_real_distribution<double> amp(-1.0, 1.0), pos(-0.1 * g.length(), 0.1 * g.length()),
      width(0.3 * s * s, s * s);
  std::vector<std::array<double, 4>> p;
  for (int k = 0; k < bumps; ++k) p.push_back({amp(rng), pos(rng), pos(rng), width(rng)});
  return Field::sample(g, [&](double x1, double x2) {
    double v = 0.0;
    for (const auto& b : p) v += b[0] * heat_kernel(b[3], x1 - b[1], x2 - b[2]);
    return v;
  });
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

}  // namespace driftlab::test
