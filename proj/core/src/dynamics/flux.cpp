#include "driftlab/dynamics/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftlab/spectral/fft.hpp"
#include "driftlab/spectral/quadrature.hpp"

namespace driftlab {

using cd = std::complex<double>;

FluxEvaluator::FluxEvaluator(const Grid& grid, ModelSpec model) : grid_(grid), model_(model) {
  model_.validate();
  const std::size_t n = grid.n();
  const std::size_t cols = grid.spectral_cols();
  kx_.resize(grid.spectral_size());
  ky_.resize(grid.spectral_size());
  k2_.resize(grid.spectral_size());
  inv_norm_.resize(grid.spectral_size());
  keep_.resize(grid.spectral_size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t idx = i * cols + j;
      const double k1 = grid.wavenumber(i);
      const double k2 = grid.wavenumber(j);
      const bool nyq = grid.is_nyquist(i) || grid.is_nyquist(j);
      kx_[idx] = nyq ? 0.0 : k1;
      ky_[idx] = nyq ? 0.0 : k2;
      k2_[idx] = k1 * k1 + k2 * k2;
      inv_norm_[idx] = (i == 0 && j == 0) ? 0.0 : 1.0 / std::sqrt(k2_[idx]);
      keep_[idx] = dealias_keeps(grid, i, j) ? 1 : 0;
    }
  }
}

FluxEvaluator::Products FluxEvaluator::products(const Spectrum& u_hat) const {
  require_same_grid(grid_, u_hat.grid(), "flux");
  const Field u = inverse(u_hat);
  const auto uv = u.values();
  Field f1(grid_), f2(grid_);
  auto p1 = f1.values();
  auto p2 = f2.values();
  double vmax = 0.0;

  if (model_.kind == ModelKind::qg || model_.kind == ModelKind::fr) {
    // Riesz components; for QG the velocity is R^perp u = (-R_2 u, R_1 u).
    Spectrum r1(grid_), r2(grid_);
    const auto uh = u_hat.coeffs();
    auto c1 = r1.coeffs();
    auto c2 = r2.coeffs();
    for (std::size_t k = 0; k < uh.size(); ++k) {
      c1[k] = cd(0.0, kx_[k] * inv_norm_[k]) * uh[k];
      c2[k] = cd(0.0, ky_[k] * inv_norm_[k]) * uh[k];
    }
    const Field ru1 = inverse(r1);
    const Field ru2 = inverse(r2);
    const auto a1 = ru1.values();
    const auto a2 = ru2.values();
    const bool qg = model_.kind == ModelKind::qg;
    for (std::size_t k = 0; k < uv.size(); ++k) {
      const double v1 = qg ? -a2[k] : a1[k];
      const double v2 = qg ? a1[k] : a2[k];
      vmax = std::max(vmax, std::hypot(v1, v2));
      const double s = qg ? -uv[k] : uv[k];
      p1[k] = s * v1;
      p2[k] = s * v2;
    }
  } else {
    const bool modulus = model_.kind == ModelKind::cd;
    double umax = 0.0;
    for (std::size_t k = 0; k < uv.size(); ++k) {
      const double q = modulus ? std::abs(uv[k]) * uv[k] : uv[k] * uv[k];
      umax = std::max(umax, std::abs(uv[k]));
      p1[k] = model_.a[0] * q;
      p2[k] = model_.a[1] * q;
    }
    vmax = 2.0 * std::hypot(model_.a[0], model_.a[1]) * umax;
  }
  return {std::move(f1), std::move(f2), vmax};
}

FluxEvaluator::Result FluxEvaluator::evaluate(const Spectrum& u_hat) const {
  Products p = products(u_hat);
  const Spectrum f1 = forward(p.f1);
  const Spectrum f2 = forward(p.f2);
  Result out{Spectrum(grid_), p.max_velocity, {0.0, 0.0}};
  const double w = grid_.dx() * grid_.dx();
  // Zero mode of the unnormalised DFT is the plain sum of samples.
  out.flux_integral = {f1.coeffs()[0].real() * w, f2.coeffs()[0].real() * w};
  auto r = out.rhs.coeffs();
  const auto g1 = f1.coeffs();
  const auto g2 = f2.coeffs();
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = keep_[k] ? cd(0.0, 1.0) * (kx_[k] * g1[k] + ky_[k] * g2[k]) : cd(0.0);
  }
  if (!std::isfinite(out.flux_integral[0]) || !std::isfinite(out.flux_integral[1])) {
    throw std::runtime_error("flux: non-finite nonlinear term");
  }
  return out;
}

VectorField FluxEvaluator::flux(const Spectrum& u_hat) const {
  Products p = products(u_hat);
  VectorField out{inverse(dealias(forward(p.f1))), inverse(dealias(forward(p.f2)))};
  if (!out.x1.all_finite() || !out.x2.all_finite()) throw std::runtime_error("flux: non-finite nonlinear term");
  return out;
}

VectorField nonlinear_flux(const ModelSpec& model, const Field& u) {
  FluxEvaluator eval(u.grid(), model);
  return eval.flux(forward(u));
}

}  // namespace driftlab
