#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "driftlab/harness/acceptance.hpp"
#include "driftlab/harness/config.hpp"
#include "driftlab/harness/csv.hpp"
#include "driftlab/harness/experiment.hpp"
#include "driftlab/harness/fit.hpp"
#include "driftlab/harness/verify.hpp"
#include "test_support.hpp"

using namespace driftlab;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

const char* kFullConfig = R"(
# comment line
[grid]
n = 128
length = 48

[model]
kind = cd
a = 1 0.5

[time]
t_end = 12
dt_cfl = 0.4
dt_max = 0.05
snapshots = geom 2 12 8
extra_snapshots = 5
tail_limit = 1e-7

[initial]
preset = bumps
bumps = 0.6 1 0 1; 0.4 -1 0.5 0.8
target_m0 = 1
target_m1 = 0.2 0
[report]
q = 1 inf
time_shift = auto
fit_window = 3 12
ambiguous = false
snapshots = false
series_terms = 40
)";

/// Linear heat run (CD with a = 0) from a single bump.
RunConfig heat_run(Vec2 centre, double t_end, std::vector<double> times) {
  RunConfig c;
  c.sim.n = 512;
  c.sim.length = 192.0;
  c.sim.model = {ModelKind::cd, {0.0, 0.0}};
  // The integrating factor is exact for the heat flow, so large steps are fine.
  c.sim.dt_max = 5.0;
  c.sim.dt_growth = 1.0;
  c.sim.t_end = t_end;
  c.sim.snapshot_times = std::move(times);
  c.sim.initial.bumps = {{1.0, centre, 1.0}};
  c.report.estimate_ambiguous = false;
  return c;
}

}  // namespace

TEST(Config, ParsesEverySection) {
  const RunConfig c = parse(kFullConfig);
  EXPECT_EQ(c.sim.n, 128u);
  EXPECT_EQ(c.sim.length, 48.0);
  EXPECT_EQ(c.sim.model.kind, ModelKind::cd);
  EXPECT_EQ(c.sim.model.a, (Vec2{1.0, 0.5}));
  EXPECT_EQ(c.sim.t_end, 12.0);
  EXPECT_EQ(c.sim.dt_cfl, 0.4);
  EXPECT_EQ(c.sim.dt_max, 0.05);
  EXPECT_EQ(c.sim.tail_limit, 1e-7);
  ASSERT_EQ(c.sim.snapshot_times.size(), 9u);  // 8 geometric + 5
  EXPECT_TRUE(std::is_sorted(c.sim.snapshot_times.begin(), c.sim.snapshot_times.end()));
  EXPECT_EQ(c.sim.snapshot_times.front(), 2.0);
  EXPECT_EQ(c.sim.snapshot_times.back(), 12.0);
  ASSERT_EQ(c.sim.initial.bumps.size(), 2u);
  EXPECT_EQ(c.sim.initial.bumps[1].centre, (Vec2{-1.0, 0.5}));
  EXPECT_EQ(c.sim.initial.bumps[1].width, 0.8);
  ASSERT_TRUE(c.sim.initial.target.has_value());
  EXPECT_EQ(c.sim.initial.target->m1, (Vec2{0.2, 0.0}));
  EXPECT_EQ(c.report.qs, (std::vector<double>{1.0, kInf}));
  EXPECT_FALSE(c.report.time_shift.has_value());
  EXPECT_EQ(c.report.fit_lo, 3.0);
  EXPECT_EQ(c.report.fit_hi, 12.0);
  EXPECT_FALSE(c.report.estimate_ambiguous);
  EXPECT_FALSE(c.report.write_snapshots);
  EXPECT_EQ(c.report.series_terms, 40);
}

TEST(Config, DefaultsAndPresets) {
  const RunConfig c = parse("[grid]\nn = 64\nlength = 30\n[model]\nkind = QG\n[time]\nt_end = 1\n");
  EXPECT_EQ(c.sim.initial.bumps.size(), InitialDataSpec::default_pair().bumps.size());
  EXPECT_EQ(c.report.time_shift, std::optional<double>(0.0));
  const RunConfig q = parse("[grid]\nn = 64\nlength = 30\n[model]\nkind = FR\n[time]\nt_end = 1\n"
                            "[initial]\npreset = isotropic_quad\nm1 = 0.4\n");
  EXPECT_EQ(q.sim.initial.bumps.size(), 4u);
}

TEST(Config, RoundTrip) {
  const RunConfig c = parse(kFullConfig);
  std::ostringstream out;
  write_run_config(out, c);
  const RunConfig back = parse(out.str());
  EXPECT_EQ(back.sim.n, c.sim.n);
  EXPECT_EQ(back.sim.length, c.sim.length);
  EXPECT_EQ(back.sim.model.kind, c.sim.model.kind);
  EXPECT_EQ(back.sim.model.a, c.sim.model.a);
  EXPECT_EQ(back.sim.snapshot_times, c.sim.snapshot_times);
  EXPECT_EQ(back.sim.dt_cfl, c.sim.dt_cfl);
  EXPECT_EQ(back.sim.tail_limit, c.sim.tail_limit);
  ASSERT_EQ(back.sim.initial.bumps.size(), c.sim.initial.bumps.size());
  for (std::size_t k = 0; k < c.sim.initial.bumps.size(); ++k) {
    EXPECT_EQ(back.sim.initial.bumps[k].amplitude, c.sim.initial.bumps[k].amplitude);
    EXPECT_EQ(back.sim.initial.bumps[k].centre, c.sim.initial.bumps[k].centre);
  }
  EXPECT_EQ(back.sim.initial.target.has_value(), c.sim.initial.target.has_value());
  EXPECT_EQ(back.report.qs, c.report.qs);
  EXPECT_EQ(back.report.time_shift, c.report.time_shift);
  EXPECT_EQ(back.report.series_terms, c.report.series_terms);
}

TEST(Config, Errors) {
  const std::string base = "[grid]\nn = 64\nlength = 30\n[model]\nkind = QG\n[time]\nt_end = 1\n";
  EXPECT_THROW(parse(base + "[extra]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse(base + "[report]\ncolour = red\n"), ConfigError);
  EXPECT_THROW(parse("[grid]\nn = 100\nlength = 30\n[model]\nkind = QG\n[time]\nt_end = 1\n"), ConfigError);
  EXPECT_THROW(parse("[grid]\nn = 64\nlength = 30\n[model]\nkind = QG\na = 1 0\n[time]\nt_end = 1\n"), ConfigError);
  EXPECT_THROW(parse("[grid]\nn = 64\nlength = abc\n[model]\nkind = QG\n[time]\nt_end = 1\n"), ConfigError);
  EXPECT_THROW(parse("[grid]\nn = 64\nlength = 30\n[model]\nkind = KdV\n[time]\nt_end = 1\n"), ConfigError);
  EXPECT_THROW(parse(base + "[initial]\npreset = bumps\nbumps = 1 2\n"), ConfigError);
  EXPECT_THROW(parse(base + "[report]\nq = 0.5\n"), ConfigError);
}

TEST(Config, QNames) {
  EXPECT_EQ(parse_q("1"), 1.0);
  EXPECT_EQ(parse_q("inf"), kInf);
  EXPECT_EQ(format_q(kInf), "inf");
  EXPECT_EQ(format_q(2.0), "2");
  EXPECT_THROW(parse_q("zero"), ConfigError);
}

TEST(Csv, NumberFormatKeepsSeventeenDigits) {
  const double v = 0.1;
  EXPECT_EQ(format_number(v), "1.0000000000000001e-01");
  EXPECT_EQ(std::stod(format_number(kPi)), kPi);
}

TEST(Csv, ResidualRoundTripAndSchema) {
  const std::vector<ResidualRow> rows = {{10.0, 1.0, "0", 1.5e-3, 1.0, {-0.8, 0.0}, 2e-9},
                                         {12.5, kInf, "1-nolog", 3.25e-7, 1.0, {-0.8, 1e-17}, 3e-9}};
  std::ostringstream out;
  write_residual_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,q,level,norm,M0,M1x,M1y,tail_mass");
  std::istringstream in(text);
  const auto back = read_residual_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].t, rows[k].t);
    EXPECT_EQ(back[k].q, rows[k].q);
    EXPECT_EQ(back[k].level, rows[k].level);
    EXPECT_EQ(back[k].norm, rows[k].norm);
    EXPECT_EQ(back[k].m1, rows[k].m1);
    EXPECT_EQ(back[k].tail_mass, rows[k].tail_mass);
  }
  std::istringstream wrong("t,level,q,norm\n");
  EXPECT_ANY_THROW(read_residual_csv(wrong));
}

TEST(Csv, DiagnosticsRoundTrip) {
  std::vector<DiagnosticsRow> rows(2);
  rows[0] = {0.0, 1.0, 0.2, 0.05, 1.0, {0.1, -0.2}, 1e-12, {0.04, 0.0}};
  rows[1] = {0.125, 0.99, 0.19, 0.045, 1.0, {0.1, -0.2}, 2e-12, {0.035, 1e-18}};
  std::ostringstream out;
  write_diagnostics_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), kDiagnosticsHeader);
  std::istringstream in(out.str());
  const auto back = read_diagnostics_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].t, 0.125);
  EXPECT_EQ(back[1].flux_integral, rows[1].flux_integral);
  EXPECT_EQ(back[0].m1, rows[0].m1);
}

TEST(Csv, SnapshotRoundTrip) {
  const Grid g = make_grid(16, 7.5);
  const Field f = test::sample_heat(g, 0.7, 0.3, -0.2);
  std::ostringstream out;
  write_snapshot(out, f, 3.25, ModelKind::fr);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "16 7.5000000000000000e+00 3.2500000000000000e+00 FR");
  std::istringstream in(out.str());
  const SnapshotFile s = read_snapshot(in);
  EXPECT_EQ(s.t, 3.25);
  EXPECT_EQ(s.model, ModelKind::fr);
  EXPECT_EQ(s.field.grid(), g);
  EXPECT_EQ(test::max_abs_diff(s.field, f), 0.0);
}

TEST(Fit, ExactPowerLaw) {
  std::vector<double> t, n;
  for (int k = 0; k < 10; ++k) {
    t.push_back(std::pow(10.0, 1.0 + k / 9.0));
    n.push_back(1.0 / t.back());
  }
  const FitResult f = fit_decay(t, n);
  EXPECT_NEAR(f.slope, -1.0, 1e-12);
  EXPECT_NEAR(f.intercept, 0.0, 1e-11);
  EXPECT_LT(f.stderr_slope, 1e-12);
  EXPECT_EQ(f.points, 10u);
}

TEST(Fit, LogarithmicContaminationBiasesUpward) {
  // The local slope of t^-1 log t is -1 + 1/log t, between -0.57 and -0.86 on
  // [10, 1000]; the least-squares slope lands near -0.77.
  std::vector<double> t, n;
  for (int k = 0; k < 12; ++k) {
    t.push_back(std::pow(10.0, 1.0 + 2.0 * k / 11.0));
    n.push_back(std::log(t.back()) / t.back());
  }
  const FitResult f = fit_decay(t, n);
  EXPECT_GT(f.slope, -0.8);
  EXPECT_LT(f.slope, -0.75);
  EXPECT_TRUE(std::isfinite(f.stderr_slope));
}

TEST(Fit, Errors) {
  const std::vector<double> t{1, 2, 3, 4, 5, 6, 7, 8}, n{1, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_NO_THROW(fit_decay(t, n));
  EXPECT_THROW(fit_decay({1, 2, 3}, {1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(fit_decay({1, 2, 3, 4, 5, 6, 8, 7}, n), std::invalid_argument);
  EXPECT_THROW(fit_decay({0, 2, 3, 4, 5, 6, 7, 8}, n), std::invalid_argument);
  EXPECT_THROW(fit_decay(t, {1, 1, 1, 0, 1, 1, 1, 1}), NonPositiveNorm);
  EXPECT_THROW(fit_decay(t, {1, 1, 1, 1}), std::invalid_argument);
}

TEST(Experiment, LevelsPerModel) {
  auto names = [](ModelKind k) {
    std::vector<std::string> out;
    for (const auto& l : default_levels(k)) out.push_back(l.name);
    return out;
  };
  EXPECT_EQ(names(ModelKind::qg), (std::vector<std::string>{"raw", "0", "1"}));
  EXPECT_EQ(names(ModelKind::cd), (std::vector<std::string>{"raw", "0", "1", "1-nolog", "1-noj1"}));
  EXPECT_EQ(names(ModelKind::cd2), names(ModelKind::cd));
  EXPECT_EQ(names(ModelKind::fr), (std::vector<std::string>{"raw", "0", "1", "1-noj1"}));
}

TEST(Experiment, TimeShiftMakesHeatProfileExact) {
  // u0 = G(1): u(t) = G(1 + t) = M0 G(t + 1), so a shift of 1 removes every residual.
  RunConfig c = heat_run({0.0, 0.0}, 8.0, geometric_times(1.0, 8.0, 6));
  c.sim.initial.bumps = {{1.0, {0.0, 0.0}, 1.0}};
  c.report.time_shift = 1.0;
  const RunResult r = run(c.sim);
  const ExperimentPlan plan = make_plan("heat", c);
  const ProfileMoments pm = profile_moments(r, c);
  EXPECT_EQ(pm.time_shift, 1.0);
  for (const auto& row : residual_norms(r.snapshots, plan, pm)) {
    if (row.level == "raw") continue;
    EXPECT_LE(row.norm, 1e-10) << row.level << " t=" << row.t << " q=" << row.q;
  }
  // "auto" recovers the same shift: \int |x|^2 G(1) / 4 = 1.
  EXPECT_NEAR(resolve_time_shift(r.initial, ReportConfig{.time_shift = std::nullopt}), 1.0, 1e-10);
}

TEST(Experiment, HeatLevelOneDecaysAtSecondMomentOrder) {
  RunConfig c = heat_run({1.0, 0.5}, 100.0, geometric_times(10.0, 100.0, 10));
  const RunResult r = run(c.sim);
  const ExperimentPlan plan = make_plan("heat", c);
  const auto rows = residual_norms(r.snapshots, plan, profile_moments(r, c));
  std::vector<double> t, n;
  for (const auto& row : select_rows(rows, "1", 1.0)) {
    t.push_back(row.t);
    n.push_back(row.norm);
  }
  EXPECT_LE(fit_decay(t, n).slope, -0.95);
}

TEST(Experiment, SelectAndFitRows) {
  std::vector<ResidualRow> rows;
  for (int k = 0; k < 10; ++k) {
    const double t = 10.0 * std::pow(10.0, k / 9.0);
    rows.push_back({t, 1.0, "0", std::pow(t, -0.5), 1.0, {0, 0}, 0});
    rows.push_back({t, kInf, "0", std::pow(t, -1.5), 1.0, {0, 0}, 0});
  }
  EXPECT_EQ(select_rows(rows, "0", kInf).size(), 10u);
  EXPECT_TRUE(select_rows(rows, "1", kInf).empty());
  const auto fits = fit_rows(rows, 10.0, 100.0);
  ASSERT_EQ(fits.size(), 2u);
  for (const auto& f : fits) EXPECT_NEAR(f.slope, std::isinf(f.q) ? -1.5 : -0.5, 1e-12);
}

TEST(Experiment, AmbiguousConstantFromSyntheticFlux) {
  // Flux excess h(s) = B (1 + s)^{-2}: the constant is B, the tail ~ s^{-2} is fitted.
  const ModelSpec cd{ModelKind::cd, {2.0, 0.0}};
  const double b = 0.03, c = convection_mass(ModelKind::cd, 1.0);
  std::vector<DiagnosticsRow> rows;
  for (double s = 0.0; s <= 100.0 + 1e-12; s += 0.01) {
    DiagnosticsRow r;
    r.t = s;
    const double along = c / (8 * kPi * (1 + s)) + b / ((1 + s) * (1 + s));
    r.flux_integral = {2.0 * along, 0.0};  // a . \int f / |a|^2 = along
    rows.push_back(r);
  }
  const AmbiguousEstimate e = estimate_ambiguous(rows, cd, 1.0);
  EXPECT_TRUE(e.fitted_exponent);
  EXPECT_NEAR(e.tail_exponent, 2.0, 0.05);
  EXPECT_NEAR(e.value, b, 2e-5);
  EXPECT_THROW(estimate_ambiguous(rows, {ModelKind::qg, {0.0, 0.0}}, 1.0), ConfigError);
}

TEST(Experiment, Deterministic) {
  RunConfig c = heat_run({1.0, 0.0}, 5.0, geometric_times(1.0, 5.0, 8));
  c.sim.model = {ModelKind::cd, {1.0, 0.0}};
  c.sim.n = 128;
  c.sim.length = 48.0;
  c.sim.initial = InitialDataSpec::default_pair();
  c.report.estimate_ambiguous = true;
  auto csv = [&] {
    const RunResult r = run(c.sim);
    std::ostringstream out;
    write_residual_csv(out, residual_norms(r.snapshots, make_plan("d", c), profile_moments(r, c)));
    return out.str();
  };
  EXPECT_EQ(csv(), csv());
}

TEST(Verify, SuitesPass) {
  for (const std::string name : {"subordination", "identities", "skew", "ladder", "series", "flux"}) {
    for (const auto& c : run_verify_suite(name)) EXPECT_TRUE(c.passed) << name << ": " << c.name << " " << c.detail;
  }
  EXPECT_ANY_THROW(run_verify_suite("nonsense"));
}

TEST(Acceptance, PlansCoverEveryModel) {
  const auto plans = acceptance_plans(AcceptanceOptions{});
  ASSERT_EQ(plans.size(), 4u);
  for (const auto& p : plans) {
    EXPECT_NO_THROW(p.config.sim.validate());
    EXPECT_FALSE(p.config.report.time_shift.has_value());
    std::size_t in_window = 0;
    for (double t : p.config.sim.snapshot_times) in_window += (t >= p.config.report.fit_lo && t <= p.config.report.fit_hi);
    EXPECT_GE(in_window, 8u) << p.name;
  }
}
