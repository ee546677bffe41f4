#include "driftlab/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "driftlab/spectral/quadrature.hpp"

namespace driftlab {

std::vector<LevelSpec> default_levels(ModelKind kind) {
  std::vector<LevelSpec> out;
  LevelSpec raw{"raw", true, {}};
  out.push_back(raw);
  out.push_back({"0", false, StackFlags::level0()});
  const StackFlags full = StackFlags::full(kind);
  out.push_back({"1", false, full});
  if (full.logshift) {
    StackFlags f = full;
    f.logshift = false;
    out.push_back({"1-nolog", false, f});
  }
  if (full.j1) {
    StackFlags f = full;
    f.j1 = false;
    out.push_back({"1-noj1", false, f});
  }
  return out;
}

ExperimentPlan make_plan(std::string name, RunConfig config) {
  ExperimentPlan p{std::move(name), std::move(config), {}};
  p.levels = default_levels(p.config.sim.model.kind);
  return p;
}

AmbiguousEstimate estimate_ambiguous(const std::vector<DiagnosticsRow>& rows, const ModelSpec& model, double m0) {
  if (!model.uses_drift_vector()) throw ConfigError("estimate_ambiguous: only CD and CD2 have a flux-excess constant");
  const double a2 = model.a[0] * model.a[0] + model.a[1] * model.a[1];
  if (a2 == 0.0) return {};
  if (rows.size() < 2) throw ConfigError("estimate_ambiguous: need at least two diagnostics rows");
  const double c = convection_mass(model.kind, m0);
  auto h = [&](const DiagnosticsRow& r) {
    const double along = (model.a[0] * r.flux_integral[0] + model.a[1] * r.flux_integral[1]) / a2;
    return along - c / (8.0 * std::numbers::pi * (1.0 + r.t));
  };

  AmbiguousEstimate est;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    est.quadrature += 0.5 * (rows[k].t - rows[k - 1].t) * (h(rows[k]) + h(rows[k - 1]));
  }

  // Power-law fit of |h| over the last quarter-decade-plus of the run.
  const double t_last = rows.back().t;
  const double h_last = h(rows.back());
  std::vector<double> ls, lh;
  bool same_sign = true;
  for (const auto& r : rows) {
    if (r.t < 0.25 * t_last || r.t <= 0.0) continue;
    const double v = h(r);
    if (v == 0.0 || (v > 0.0) != (h_last > 0.0)) same_sign = false;
    ls.push_back(std::log(r.t));
    lh.push_back(std::log(std::abs(v)));
  }
  if (same_sign && ls.size() >= 4) {
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      mx += ls[k];
      my += lh[k];
    }
    mx /= ls.size();
    my /= ls.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      sxx += (ls[k] - mx) * (ls[k] - mx);
      sxy += (ls[k] - mx) * (lh[k] - my);
    }
    const double p = -sxy / sxx;
    if (p > 1.05 && std::isfinite(p)) {
      est.tail_exponent = p;
      est.fitted_exponent = true;
    }
  }
  // \int_T^inf h_T (s/T)^{-p} ds = h_T T / (p - 1)
  est.tail = h_last * t_last / (est.tail_exponent - 1.0);
  est.value = est.quadrature + est.tail;
  return est;
}

double resolve_time_shift(const Field& u0, const ReportConfig& report) {
  if (report.time_shift) return *report.time_shift;
  const double m0 = moments(u0).m0;
  if (m0 == 0.0) throw ConfigError("time_shift = auto needs nonzero mass");
  const SecondMoments s = second_moments(u0);
  const double tau = (s.xx + s.yy) / (4.0 * m0);
  if (!(tau >= 0.0)) throw ConfigError("time_shift = auto gave a negative shift; set it explicitly");
  return tau;
}

ProfileMoments profile_moments(const RunResult& run, const RunConfig& config) {
  const MomentSet m = moments(run.initial);
  ProfileMoments pm;
  pm.m0 = m.m0;
  pm.m1 = m.m1;
  pm.time_shift = resolve_time_shift(run.initial, config.report);
  const ModelSpec& model = config.sim.model;
  if (model.uses_drift_vector() && config.report.estimate_ambiguous) {
    pm.ambiguous = estimate_ambiguous(run.diagnostics, model, pm.m0);
    pm.m1[0] += model.a[0] * pm.ambiguous.value;
    pm.m1[1] += model.a[1] * pm.ambiguous.value;
  }
  return pm;
}

std::vector<ResidualRow> residual_norms(const std::vector<Snapshot>& snapshots, const ExperimentPlan& plan,
                                        const ProfileMoments& pm) {
  const SimConfig& sim = plan.config.sim;
  const ReportConfig& rep = plan.config.report;
  std::vector<ResidualRow> rows;
  for (const auto& snap : snapshots) {
    if (!(snap.t > 0.0)) continue;
    const Field& u = snap.field;
    const MomentSet m = moments(u);
    const double te = snap.t + pm.time_shift;
    for (const auto& level : plan.levels) {
      Field r = u;
      if (!level.subtract_nothing) {
        const Field stack = expansion_stack(sim.model, te, u.grid(), pm.m0, pm.m1, level.flags, rep.series_terms);
        require_same_grid(u.grid(), stack.grid(), "residual_norms");
        r -= stack;
      }
      for (double q : rep.qs) rows.push_back({snap.t, q, level.name, lq_norm(r, q), m.m0, m.m1, m.tail_mass});
    }
  }
  return rows;
}

std::vector<ResidualRow> select_rows(const std::vector<ResidualRow>& rows, const std::string& level, double q) {
  std::vector<ResidualRow> out;
  for (const auto& r : rows) {
    if (r.level == level && r.q == q) out.push_back(r);
  }
  return out;
}

std::vector<FitResult> fit_rows(const std::vector<ResidualRow>& rows, double lo, double hi) {
  std::vector<std::pair<std::string, double>> keys;
  for (const auto& r : rows) {
    const std::pair<std::string, double> key{r.level, r.q};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  const double slack = 1e-9 * hi;
  std::vector<FitResult> fits;
  for (const auto& [level, q] : keys) {
    std::vector<double> ts, ns;
    for (const auto& r : select_rows(rows, level, q)) {
      if (r.t < lo - slack || r.t > hi + slack) continue;
      ts.push_back(r.t);
      ns.push_back(r.norm);
    }
    FitResult f = fit_decay(ts, ns);
    f.q = q;
    f.level = level;
    fits.push_back(f);
  }
  return fits;
}

}  // namespace driftlab
