#include "driftlab/dynamics/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "driftlab/dynamics/model.hpp"
#include "driftlab/spectral/quadrature.hpp"

namespace driftlab {

InitialDataSpec InitialDataSpec::default_pair() {
  InitialDataSpec s;
  s.bumps = {{0.7, {1.5, 0.5}, 1.0}, {0.3, {-1.5, -0.5}, 1.0}};
  return s;
}

InitialDataSpec InitialDataSpec::isotropic_quad(double m1_along_x) {
  // Mass 1/2 on the x1 axis pair and 1/2 on the x2 axis pair at distance d:
  // second moments are then equal on both axes. M1 = -d (A - B) e1.
  constexpr double d = 2.0;
  const double diff = -m1_along_x / d;
  if (!(std::abs(diff) <= 0.5)) {
    throw ConfigError("isotropic_quad: |M1| must be <= 1 to keep every amplitude non-negative");
  }
  InitialDataSpec s;
  s.bumps = {{0.25 + 0.5 * diff, {d, 0.0}, 1.0},
             {0.25 - 0.5 * diff, {-d, 0.0}, 1.0},
             {0.25, {0.0, d}, 1.0},
             {0.25, {0.0, -d}, 1.0}};
  return s;
}

std::vector<GaussianBump> resolve_bumps(const InitialDataSpec& spec) {
  if (spec.bumps.empty()) throw ConfigError("initial data: no bumps");
  for (const auto& b : spec.bumps) {
    if (!(b.width > 0.0) || !std::isfinite(b.amplitude) || !std::isfinite(b.centre[0]) ||
        !std::isfinite(b.centre[1])) {
      throw ConfigError("initial data: bump width must be positive and all parameters finite");
    }
  }
  if (!spec.target) return spec.bumps;

  // Rows of B: mass, then -centre components (M1 = -sum A c). Minimum-norm
  // solution A = B^T (B B^T)^{-1} b.
  const auto& bumps = spec.bumps;
  const std::size_t nb = bumps.size();
  if (nb < 3) throw ConfigError("initial data: prescribing moments needs at least 3 bumps");
  std::vector<std::array<double, 3>> rows(nb);
  for (std::size_t k = 0; k < nb; ++k) rows[k] = {1.0, -bumps[k].centre[0], -bumps[k].centre[1]};
  double m[3][3] = {};
  for (const auto& r : rows)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m[a][b] += r[a] * r[b];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  double scale = 0.0;
  for (auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (std::abs(det) <= 1e-12 * scale * scale * scale) {
    throw ConfigError("initial data: bump centres are collinear, moments cannot be prescribed");
  }
  const double rhs[3] = {spec.target->m0, spec.target->m1[0], spec.target->m1[1]};
  double y[3];
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) mc[a][b] = (b == c) ? rhs[a] : m[a][b];
    y[c] = (mc[0][0] * (mc[1][1] * mc[2][2] - mc[1][2] * mc[2][1]) -
            mc[0][1] * (mc[1][0] * mc[2][2] - mc[1][2] * mc[2][0]) +
            mc[0][2] * (mc[1][0] * mc[2][1] - mc[1][1] * mc[2][0])) /
           det;
  }
  std::vector<GaussianBump> out = bumps;
  for (std::size_t k = 0; k < nb; ++k) {
    out[k].amplitude = rows[k][0] * y[0] + rows[k][1] * y[1] + rows[k][2] * y[2];
  }
  return out;
}

Field build_initial_field(const Grid& grid, const InitialDataSpec& spec) {
  const auto bumps = resolve_bumps(spec);
  Field u = Field::sample(grid, [&](double x1, double x2) {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double d1 = x1 - b.centre[0];
      const double d2 = x2 - b.centre[1];
      s += b.amplitude * std::exp(-(d1 * d1 + d2 * d2) / (4.0 * b.width)) /
           (4.0 * std::numbers::pi * b.width);
    }
    return s;
  });
  const double tail = tail_mass(u);
  if (tail > 1e-8) {
    throw ConfigError("initial data: tail mass " + std::to_string(tail) +
                      " exceeds 1e-8; enlarge the box or narrow the bumps");
  }
  return u;
}

}  // namespace driftlab
