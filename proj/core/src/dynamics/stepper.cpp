#include "driftlab/dynamics/stepper.hpp"

#include <cmath>
#include <string>

#include "driftlab/spectral/fft.hpp"

namespace driftlab {

Stepper::Stepper(const Grid& grid, ModelSpec model) : eval_(grid, model) {}

Spectrum Stepper::step(const Spectrum& u_hat, double dt) const {
  return step(u_hat, dt, eval_.evaluate(u_hat).rhs);
}

Spectrum Stepper::step(const Spectrum& u_hat, double dt, const Spectrum& k1) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const Grid& g = u_hat.grid();
  const auto& q = eval_.wavenumber_squared();
  const std::size_t m = g.spectral_size();
  std::vector<double> e(m), e2(m);
  for (std::size_t k = 0; k < m; ++k) {
    e[k] = std::exp(-dt * q[k]);
    e2[k] = std::exp(-0.5 * dt * q[k]);
  }
  const auto u = u_hat.coeffs();
  const auto a1 = k1.coeffs();
  const double h = 0.5 * dt;

  Spectrum stage(g);
  auto s = stage.coeffs();
  for (std::size_t k = 0; k < m; ++k) s[k] = e2[k] * (u[k] + h * a1[k]);
  const Spectrum k2 = eval_.evaluate(stage).rhs;
  const auto a2 = k2.coeffs();

  for (std::size_t k = 0; k < m; ++k) s[k] = e2[k] * u[k] + h * a2[k];
  const Spectrum k3 = eval_.evaluate(stage).rhs;
  const auto a3 = k3.coeffs();

  for (std::size_t k = 0; k < m; ++k) s[k] = e[k] * u[k] + dt * e2[k] * a3[k];
  const Spectrum k4 = eval_.evaluate(stage).rhs;
  const auto a4 = k4.coeffs();

  Spectrum out(g);
  auto o = out.coeffs();
  const double w = dt / 6.0;
  for (std::size_t k = 0; k < m; ++k) {
    o[k] = e[k] * u[k] + w * (e[k] * a1[k] + 2.0 * e2[k] * (a2[k] + a3[k]) + a4[k]);
  }
  return out;
}

Field step(const Field& u, const ModelSpec& model, double dt) {
  const Stepper stepper(u.grid(), model);
  Field next = inverse(stepper.step(forward(u), dt));
  const double before = u.max_abs();
  const double after = next.max_abs();
  if (!next.all_finite() || after > 10.0 * before) {
    throw StabilityError("step: max norm grew from " + std::to_string(before) + " to " +
                         std::to_string(after) + " in one step (dt=" + std::to_string(dt) + ")");
  }
  return next;
}

}  // namespace driftlab
