#include "driftlab/dynamics/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "driftlab/dynamics/stepper.hpp"
#include "driftlab/spectral/fft.hpp"
#include "driftlab/spectral/quadrature.hpp"

namespace driftlab {

void SimConfig::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("sim: n must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("sim: length must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("sim: t_end must be positive");
  if (!(dt_cfl > 0.0) || dt_cfl > 1.0) throw ConfigError("sim: dt_cfl must lie in (0, 1]");
  if (!(dt_max > 0.0) || !(dt_growth > 0.0)) throw ConfigError("sim: dt_max and dt_growth must be positive");
  if (!(tail_limit > 0.0)) throw ConfigError("sim: tail_limit must be positive");
  for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
    const double t = snapshot_times[k];
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("sim: snapshot times must be finite and positive");
    if (t > t_end) throw ConfigError("sim: snapshot time " + std::to_string(t) + " is past t_end");
    if (k > 0 && !(t > snapshot_times[k - 1])) throw ConfigError("sim: snapshot times must increase strictly");
  }
  model.validate();
}

std::vector<double> geometric_times(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw ConfigError("geometric_times: need 0 < lo <= hi, count >= 1");
  if (count == 1) return {hi};
  std::vector<double> out(count);
  const double r = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo * std::exp(r * static_cast<double>(k));
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

DiagnosticsRow make_row(double t, const Field& u, const Vec2& flux_integral) {
  const MomentSet m = moments(u);
  return {t, lq_norm(u, 1.0), lq_norm(u, 2.0), u.max_abs(), m.m0, m.m1, m.tail_mass, flux_integral};
}

}  // namespace

RunResult run(const SimConfig& config) {
  config.validate();
  const Grid grid = make_grid(config.n, config.length);
  Field u0 = build_initial_field(grid, config.initial);

  std::vector<double> targets = config.snapshot_times;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  RunResult out{u0, {}, {}, 0};
  const Stepper stepper(grid, config.model);
  const FluxEvaluator& eval = stepper.evaluator();
  Spectrum u_hat = dealias(forward(u0));

  std::size_t next = 0;
  double t = 0.0;
  double prev_linf = std::numeric_limits<double>::infinity();
  for (;;) {
    const Field u = inverse(u_hat);
    const auto k1 = eval.evaluate(u_hat);
    DiagnosticsRow row = make_row(t, u, k1.flux_integral);
    if (!u.all_finite() || row.linf > 10.0 * prev_linf) {
      throw StabilityError("run: max norm jumped to " + std::to_string(row.linf) + " at t=" + std::to_string(t) +
                           " (" + std::string(to_string(config.model.kind)) + ")");
    }
    if (row.tail_mass > config.tail_limit) {
      throw TailMassError("run: tail mass " + std::to_string(row.tail_mass) + " exceeds " +
                          std::to_string(config.tail_limit) + " at t=" + std::to_string(t) +
                          "; enlarge the box");
    }
    prev_linf = row.linf;
    out.diagnostics.push_back(row);
    while (next < targets.size() && targets[next] <= t) {
      out.snapshots.push_back({targets[next], u});
      ++next;
    }
    if (t >= config.t_end) break;

    const double target = next < targets.size() ? targets[next] : config.t_end;
    double dt = std::min({config.dt_max, config.dt_growth * (1.0 + t)});
    if (k1.max_velocity > 0.0) dt = std::min(dt, config.dt_cfl * grid.dx() / k1.max_velocity);
    bool lands = false;
    if (t + dt >= target) {
      dt = target - t;
      lands = true;
    } else if (t + 1.5 * dt > target) {
      // Split the remainder in two rather than leave a sliver step.
      dt = 0.5 * (target - t);
    }
    u_hat = stepper.step(u_hat, dt, k1.rhs);
    t = lands ? target : t + dt;
    ++out.steps;
  }
  return out;
}

}  // namespace driftlab
