#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "driftlab/dynamics/flux.hpp"
#include "driftlab/dynamics/initial_data.hpp"
#include "driftlab/dynamics/simulation.hpp"
#include "driftlab/dynamics/stepper.hpp"
#include "driftlab/spectral/fft.hpp"
#include "driftlab/spectral/multiplier.hpp"
#include "driftlab/spectral/quadrature.hpp"
#include "test_support.hpp"

using namespace driftlab;
using driftlab::test::sample_heat;
constexpr double kPi = std::numbers::pi;

namespace {

double integral(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().dx() * f.grid().dx();
}

ModelSpec model(ModelKind kind, Vec2 a = {0.0, 0.0}) { return ModelSpec{kind, a}; }

/// Mean-zero-flux-free linear model: CD with a = 0 reduces to the heat equation.
ModelSpec heat_model() { return model(ModelKind::cd); }

SimConfig small_config(ModelSpec m, std::size_t n, double length, double t_end) {
  SimConfig c;
  c.n = n;
  c.length = length;
  c.model = m;
  c.t_end = t_end;
  c.snapshot_times = {t_end};
  c.initial = InitialDataSpec::default_pair();
  return c;
}

}  // namespace

TEST(Model, ParseAndValidate) {
  EXPECT_EQ(parse_model_kind("qg"), ModelKind::qg);
  EXPECT_EQ(parse_model_kind("Cd2"), ModelKind::cd2);
  EXPECT_EQ(parse_model_kind("FR"), ModelKind::fr);
  EXPECT_THROW(parse_model_kind("burgers"), ConfigError);
  EXPECT_EQ(to_string(ModelKind::cd), "CD");
  EXPECT_THROW(model(ModelKind::qg, {1.0, 0.0}).validate(), ConfigError);
  EXPECT_THROW(model(ModelKind::fr, {0.0, 0.5}).validate(), ConfigError);
  EXPECT_THROW(model(ModelKind::cd, {std::nan(""), 0.0}).validate(), ConfigError);
  EXPECT_NO_THROW(model(ModelKind::cd, {1.0, -2.0}).validate());
}

TEST(Flux, QgRadialDataHasNoNetFlux) {
  const Grid g = make_grid(128, 32.0);
  const Field u = sample_heat(g, 1.0);
  const VectorField f = nonlinear_flux(model(ModelKind::qg), u);
  EXPECT_NEAR(integral(f.x1), 0.0, 1e-10);
  EXPECT_NEAR(integral(f.x2), 0.0, 1e-10);
  const Field div = apply_multiplier(multipliers::partial(0), f.x1) + apply_multiplier(multipliers::partial(1), f.x2);
  EXPECT_NEAR(integral(div), 0.0, 1e-10);
}

TEST(Flux, ConvectionFluxMassOfHeatKernel) {
  const Grid g = make_grid(128, 32.0);
  const Field u = sample_heat(g, 1.0);
  for (ModelKind k : {ModelKind::cd, ModelKind::cd2}) {
    const VectorField f = nonlinear_flux(model(k, {1.0, 0.0}), u);
    EXPECT_NEAR(integral(f.x1), 1.0 / (8 * kPi), 1e-6);
    EXPECT_NEAR(integral(f.x2), 0.0, 1e-12);
  }
  // |u| u flips sign with u; u^2 does not.
  const Field neg = -1.0 * u;
  EXPECT_NEAR(integral(nonlinear_flux(model(ModelKind::cd, {1.0, 0.0}), neg).x1), -1.0 / (8 * kPi), 1e-6);
  EXPECT_NEAR(integral(nonlinear_flux(model(ModelKind::cd2, {1.0, 0.0}), neg).x1), 1.0 / (8 * kPi), 1e-6);
}

TEST(Flux, ForwardRieszFluxOfHeatKernelIsOddType) {
  const Grid g = make_grid(128, 32.0);
  const VectorField f = nonlinear_flux(model(ModelKind::fr), sample_heat(g, 1.0));
  EXPECT_NEAR(integral(f.x1), 0.0, 1e-10);
  EXPECT_NEAR(integral(f.x2), 0.0, 1e-10);
}

TEST(Flux, EvaluatorReportsFluxIntegralAndVelocity) {
  const Grid g = make_grid(64, 24.0);
  const Field u = sample_heat(g, 1.0);
  const FluxEvaluator ev(g, model(ModelKind::cd, {0.0, 2.0}));
  const auto r = ev.evaluate(forward(u));
  EXPECT_NEAR(r.flux_integral[1], 2.0 / (8 * kPi), 1e-6);
  EXPECT_NEAR(r.max_velocity, 2 * 2.0 * u.max_abs(), 1e-12);
  EXPECT_EQ(r.rhs(0, 0), std::complex<double>(0.0, 0.0));
}

TEST(Step, LinearHeatIsExact) {
  const Grid g = make_grid(64, 40.0);
  const Field u = sample_heat(g, 1.0, 0.5, -1.0);
  const Field next = step(u, heat_model(), 0.5);
  const Field semigroup = apply_multiplier(multipliers::heat(0.5), u);
  EXPECT_LE(test::max_abs_diff(next, semigroup), 1e-12 * u.max_abs());
  EXPECT_LE(test::max_abs_diff(next, sample_heat(g, 1.5, 0.5, -1.0)), 1e-12 * u.max_abs());
}

TEST(Step, MassIsConservedByEveryModel) {
  std::mt19937 rng(17);
  const Grid g = make_grid(128, 30.0);
  for (ModelSpec m : {model(ModelKind::qg), model(ModelKind::cd, {1.0, 0.5}), model(ModelKind::cd2, {-0.3, 1.0}),
                      model(ModelKind::fr)}) {
    Field u = 20.0 * test::random_smooth(g, rng);
    const double m0 = integral(u);
    for (int k = 0; k < 5; ++k) u = step(u, m, 0.01);
    EXPECT_NEAR(integral(u), m0, 1e-13 * std::max(1.0, std::abs(m0))) << to_string(m.kind);
  }
}

TEST(Step, QgConservesFirstMoment) {
  const Grid g = make_grid(128, 40.0);
  InitialDataSpec spec = InitialDataSpec::default_pair();
  for (auto& b : spec.bumps) b.amplitude *= 10.0;
  Field u = build_initial_field(g, spec);
  const Vec2 m1 = moments(u).m1;
  const double dt = 0.02;
  const int steps = 50;
  for (int k = 0; k < steps; ++k) u = step(u, model(ModelKind::qg), dt);
  const Vec2 after = moments(u).m1;
  const double scale = std::hypot(m1[0], m1[1]);
  EXPECT_LE(std::hypot(after[0] - m1[0], after[1] - m1[1]), 1e-8 * scale * dt * steps);
}

TEST(Step, FourthOrderUnderStepHalving) {
  const Grid g = make_grid(64, 32.0);
  InitialDataSpec spec;
  spec.bumps = {{20.0, {1.0, 0.0}, 0.5}, {-12.0, {-1.0, 1.0}, 0.5}};
  const Field u0 = build_initial_field(g, spec);
  const Stepper st(g, model(ModelKind::qg));
  auto solve = [&](int steps) {
    Spectrum s = forward(u0);
    for (int k = 0; k < steps; ++k) s = st.step(s, 1.0 / steps);
    return inverse(s);
  };
  const Field a = solve(16), b = solve(32), c = solve(64);
  const double order = std::log2(test::max_abs_diff(a, b) / test::max_abs_diff(b, c));
  EXPECT_GT(order, 3.7);
  EXPECT_LT(order, 4.3);
}

TEST(Step, QgKeepsRadialDataRadial) {
  // On the whole plane radial data only rotates, so the heat flow is untouched.
  // The periodic box adds a small non-tangential velocity that shrinks like L^-3.
  const Grid g = make_grid(128, 64.0);
  Field u = sample_heat(g, 1.0);
  for (int k = 0; k < 20; ++k) u = step(u, model(ModelKind::qg), 0.05);
  EXPECT_LE(test::max_abs_diff(u, sample_heat(g, 2.0)), 1e-8 * u.max_abs());
  const std::size_t n = g.n();
  double asym = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      asym = std::max(asym, std::abs(u(i, j) - u(j, n - i)));  // rotation by pi/2 about the centre
      asym = std::max(asym, std::abs(u(i, j) - u(n - i, j)));  // reflection
    }
  }
  EXPECT_LE(asym, 1e-8 * u.max_abs());
}

TEST(Step, BlowUpIsReported) {
  const Grid g = make_grid(32, 16.0);
  const Field u = 50.0 * sample_heat(g, 0.5);
  EXPECT_THROW(step(u, model(ModelKind::cd, {1000.0, 0.0}), 1.0), StabilityError);
}

TEST(InitialData, DefaultPairHasUnitMassAndNoSymmetry) {
  const Grid g = make_grid(128, 32.0);
  const MomentSet m = moments(build_initial_field(g, InitialDataSpec::default_pair()));
  EXPECT_NEAR(m.m0, 1.0, 1e-12);
  EXPECT_GT(std::hypot(m.m1[0], m.m1[1]), 0.1);
}

TEST(InitialData, IsotropicQuadHasRequestedMoments) {
  const Grid g = make_grid(128, 48.0);
  const Field u = build_initial_field(g, InitialDataSpec::isotropic_quad(-0.8));
  const MomentSet m = moments(u);
  EXPECT_NEAR(m.m0, 1.0, 1e-12);
  EXPECT_NEAR(m.m1[0], -0.8, 1e-10);
  EXPECT_NEAR(m.m1[1], 0.0, 1e-12);
  const SecondMoments s = second_moments(u);
  EXPECT_NEAR(s.xx, s.yy, 1e-10);
  EXPECT_NEAR(s.xy, 0.0, 1e-12);
  EXPECT_THROW(InitialDataSpec::isotropic_quad(3.0), ConfigError);
}

TEST(InitialData, PrescribedMomentsAreReproduced) {
  const Grid g = make_grid(128, 40.0);
  InitialDataSpec spec;
  spec.bumps = {{1.0, {2.0, 0.0}, 1.0}, {1.0, {-1.0, 1.5}, 0.7}, {1.0, {0.0, -2.0}, 1.2}, {1.0, {1.0, 1.0}, 0.5}};
  spec.target = PrescribedMoments{1.3, {0.2, -0.1}};
  const MomentSet m = moments(build_initial_field(g, spec));
  EXPECT_NEAR(m.m0, 1.3, 1e-8);
  EXPECT_NEAR(m.m1[0], 0.2, 1e-8);
  EXPECT_NEAR(m.m1[1], -0.1, 1e-8);

  InitialDataSpec line;
  line.bumps = {{1.0, {0.0, 0.0}, 1.0}, {1.0, {1.0, 1.0}, 1.0}, {1.0, {2.0, 2.0}, 1.0}};
  line.target = PrescribedMoments{1.0, {0.5, 0.0}};
  EXPECT_THROW(resolve_bumps(line), ConfigError);
}

TEST(InitialData, BoundaryBumpIsRejected) {
  InitialDataSpec spec;
  spec.bumps = {{1.0, {7.0, 0.0}, 1.0}};
  EXPECT_THROW(build_initial_field(make_grid(64, 16.0), spec), ConfigError);
}

TEST(Simulation, ConfigValidation) {
  SimConfig c = small_config(heat_model(), 64, 20.0, 1.0);
  EXPECT_NO_THROW(c.validate());
  c.n = 100;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(heat_model(), 64, 20.0, 1.0);
  c.snapshot_times = {0.5, 2.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c.snapshot_times = {0.5, 0.2};
  EXPECT_THROW(c.validate(), ConfigError);
  c.snapshot_times = {0.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(heat_model(), 64, 20.0, 1.0);
  c.dt_cfl = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Simulation, GeometricTimes) {
  const auto t = geometric_times(10.0, 100.0, 3);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t[0], 10.0);
  EXPECT_NEAR(t[1], std::sqrt(1000.0), 1e-12);
  EXPECT_DOUBLE_EQ(t[2], 100.0);
}

TEST(Simulation, ZeroDataStaysZero) {
  SimConfig c = small_config(model(ModelKind::qg), 32, 16.0, 1.0);
  c.initial.bumps = {{0.0, {0.0, 0.0}, 1.0}};
  c.snapshot_times = {0.5, 1.0};
  const RunResult r = run(c);
  ASSERT_EQ(r.snapshots.size(), 2u);
  for (const auto& s : r.snapshots) EXPECT_EQ(s.field.max_abs(), 0.0);
}

TEST(Simulation, LinearRunFollowsSemigroup) {
  SimConfig c = small_config(heat_model(), 128, 40.0, 2.0);
  c.initial.bumps = {{1.0, {0.0, 0.0}, 1.0}};
  c.snapshot_times = {0.3, 1.0, 2.0};
  const RunResult r = run(c);
  ASSERT_EQ(r.snapshots.size(), 3u);
  for (const auto& s : r.snapshots) {
    EXPECT_LE(test::max_abs_diff(s.field, sample_heat(s.field.grid(), 1.0 + s.t)),
              1e-10)
        << "t=" << s.t;
  }
  EXPECT_DOUBLE_EQ(r.snapshots[0].t, 0.3);
  EXPECT_DOUBLE_EQ(r.snapshots[2].t, 2.0);
}

TEST(Simulation, ConvectionMomentOdeMatchesFluxQuadrature) {
  SimConfig c = small_config(model(ModelKind::cd, {1.0, 0.0}), 128, 48.0, 2.0);
  const RunResult r = run(c);
  const auto& d = r.diagnostics;
  ASSERT_GT(d.size(), 10u);
  double integral_flux = 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    integral_flux += 0.5 * (d[k].t - d[k - 1].t) * (d[k].flux_integral[0] + d[k - 1].flux_integral[0]);
  }
  EXPECT_NEAR(d.back().m1[0] - d.front().m1[0], integral_flux, 1e-4);
  EXPECT_NEAR(d.back().m1[1] - d.front().m1[1], 0.0, 1e-10);
}

TEST(Simulation, DiagnosticsInvariants) {
  for (ModelSpec m : {model(ModelKind::qg), model(ModelKind::cd, {1.0, 0.0}), model(ModelKind::cd2, {0.0, 1.0}),
                      model(ModelKind::fr)}) {
    const RunResult r = run(small_config(m, 128, 40.0, 3.0));
    const auto& d = r.diagnostics;
    ASSERT_FALSE(d.empty());
    EXPECT_EQ(d.front().t, 0.0);
    for (std::size_t k = 1; k < d.size(); ++k) {
      EXPECT_GT(d[k].t, d[k - 1].t);
      EXPECT_NEAR(d[k].m0, d[0].m0, 1e-10 * std::abs(d[0].m0));
      // Non-negative data: L1 = mass is flat, L2 and Linf decay.
      EXPECT_LE(d[k].l2, d[k - 1].l2 * (1 + 1e-12));
      EXPECT_LE(d[k].linf, d[k - 1].linf * (1 + 1e-12));
      EXPECT_TRUE(std::isfinite(d[k].flux_integral[0]) && std::isfinite(d[k].flux_integral[1]));
    }
  }
}

TEST(Simulation, TailMassAbort) {
  SimConfig c = small_config(heat_model(), 128, 16.0, 20.0);
  c.initial.bumps = {{1.0, {0.0, 0.0}, 0.5}};
  EXPECT_THROW(run(c), TailMassError);
}

TEST(Simulation, Deterministic) {
  const SimConfig c = small_config(model(ModelKind::fr), 128, 40.0, 1.0);
  const RunResult a = run(c), b = run(c);
  ASSERT_EQ(a.diagnostics.size(), b.diagnostics.size());
  for (std::size_t k = 0; k < a.diagnostics.size(); ++k) {
    EXPECT_EQ(a.diagnostics[k].l2, b.diagnostics[k].l2);
    EXPECT_EQ(a.diagnostics[k].m1, b.diagnostics[k].m1);
  }
  EXPECT_EQ(test::max_abs_diff(a.snapshots.back().field, b.snapshots.back().field), 0.0);
}
