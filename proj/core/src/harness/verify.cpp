#include "driftlab/harness/verify.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "driftlab/dynamics/flux.hpp"
#include "driftlab/profiles/expansion.hpp"
#include "driftlab/profiles/gauss_ladder.hpp"
#include "driftlab/profiles/oracle.hpp"
#include "driftlab/profiles/subordination.hpp"
#include "driftlab/spectral/fft.hpp"
#include "driftlab/spectral/quadrature.hpp"

namespace driftlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

CheckResult at_most(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

Field sample_gauss(const Grid& g, double t, Vec2 c = {0.0, 0.0}) {
  return Field::sample(g, [&](double x1, double x2) { return gauss(t, {x1 - c[0], x2 - c[1]}); });
}

// Sum of three random Gaussians; smooth and well inside the box.
Field random_smooth(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), pos(-4.0, 4.0), wid(0.5, 2.0);
  Field f(g);
  for (int b = 0; b < 3; ++b) {
    const double a = amp(rng);
    const Vec2 c{pos(rng), pos(rng)};
    const double w = wid(rng);
    f += a * sample_gauss(g, w, c);
  }
  return f;
}

std::vector<CheckResult> suite_subordination() {
  std::vector<CheckResult> out;
  out.push_back(at_most("subordination max error r in {0.1,1,10}", subordination_check({0.1, 1.0, 10.0}), 1e-8));
  out.push_back(at_most("subordination r=1", std::abs(subordination_integral(1.0) - std::exp(-1.0)), 1e-8));
  out.push_back(at_most("subordination r=10 absolute", std::abs(subordination_integral(10.0) - std::exp(-10.0)), 1e-10));
  out.push_back(at_most("subordination r=1e-3", std::abs(subordination_integral(1e-3) - std::exp(-1e-3)), 1e-6));
  out.push_back(at_most("subordination r -> 0+ tends to 1 (r=1e-8)", std::abs(subordination_integral(1e-8) - 1.0), 1e-6));
  return out;
}

std::vector<CheckResult> suite_identities() {
  std::vector<CheckResult> out;
  const Grid g = make_grid(256, 40.0);
  const Field gg = sample_gauss(g, 1.0);
  Field sq = gg;
  for (double& v : sq.values()) v *= v;
  out.push_back(at_most("int G(1)^2 = 1/(8 pi)", std::abs(lq_norm(sq, 1.0) - 1.0 / (8.0 * kPi)), 1e-6));
  out.push_back(at_most("||G(1)||_1 = 1", std::abs(lq_norm(gg, 1.0) - 1.0), 1e-6));
  out.push_back(at_most("||G(1)||_inf = 1/(4 pi)", std::abs(lq_norm(gg, kInf) - 1.0 / (4.0 * kPi)), 1e-8));
  return out;
}

std::vector<CheckResult> suite_skew() {
  std::vector<CheckResult> out;
  const Grid g = make_grid(128, 40.0);
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  double scale = 0.0;
  double min_lambda = kInf;
  for (int k = 0; k < 100; ++k) {
    const Field f = random_smooth(g, rng);
    const Field h = random_smooth(g, rng);
    for (int axis = 0; axis < 2; ++axis) {
      const auto op = multipliers::riesz(axis);
      const double a = skew_pairing(f, h, op);
      const double b = skew_pairing(h, f, op);
      worst = std::max(worst, std::abs(a + b));
      scale = std::max(scale, std::abs(a));
    }
    min_lambda = std::min(min_lambda, skew_pairing(f, f, multipliers::lambda()));
  }
  std::ostringstream d;
  d << "100 random pairs, R_1 and R_2; largest single pairing " << scale;
  out.push_back(at_most("skew-adjointness of R_j", worst, 1e-10, d.str()));
  const Field gg = sample_gauss(g, 1.0);
  out.push_back(at_most("pairing(G, G, R_1) = 0", std::abs(skew_pairing(gg, gg, multipliers::riesz(0))), 1e-10));
  out.push_back({"Lambda positivity: min int f Lambda f >= 0", min_lambda >= 0.0, min_lambda, 0.0,
                 "over the same 100 random fields"});
  return out;
}

}  // namespace

std::vector<CheckResult> riesz_oracle_checks(std::size_t n, double length) {
  std::vector<CheckResult> out;
  const Grid g = make_grid(n, length);
  const VectorField rp = apply_multiplier(multipliers::riesz_perp(), sample_gauss(g, 1.0));
  const std::size_t c = n / 2;
  const double dx = g.dx();
  double worst = 0.0, worst_closed = 0.0;
  int used = 0;
  for (int m = 0; m < 20; ++m) {
    const double th = 2.0 * kPi * m / 20.0 + 0.3;
    // Periodic images perturb R G by O(|x| / L^3); stay within |x| < 2.6.
    const double r = 0.3 + 0.12 * m;
    const auto i = static_cast<std::size_t>(static_cast<long>(c) + std::lround(r * std::cos(th) / dx));
    const auto j = static_cast<std::size_t>(static_cast<long>(c) + std::lround(r * std::sin(th) / dx));
    const Vec2 x{g.coordinate(i), g.coordinate(j)};
    const Vec2 q = riesz_gauss_subordinated(1.0, x);
    const Vec2 cf = riesz_gauss_closed_form(1.0, x);  // R G; R^perp G = (-R_2 G, R_1 G)
    const double nq = std::hypot(q[0], q[1]);
    worst = std::max(worst, std::hypot(rp.x1(i, j) - q[0], rp.x2(i, j) - q[1]) / nq);
    worst_closed = std::max(worst_closed, std::hypot(-cf[1] - q[0], cf[0] - q[1]) / nq);
    ++used;
  }
  std::ostringstream d;
  d << used << " probe points, N=" << n << " L=" << length;
  out.push_back(at_most("spectral R^perp G(1) vs subordinated quadrature (relative)", worst, 1e-6, d.str()));
  out.push_back(at_most("closed-form R G(1) vs subordinated quadrature (relative)", worst_closed, 1e-9));
  const auto grad = multipliers::gradient();
  const Field div = apply_multiplier(grad.c1, rp.x1) + apply_multiplier(grad.c2, rp.x2);
  out.push_back(at_most("div R^perp G = 0 on the grid", div.max_abs(), 1e-10));
  double total = 0.0;
  for (double v : div.values()) total += v;
  out.push_back(at_most("int div R^perp G dx = 0", std::abs(total) * dx * dx, 1e-10));
  return out;
}

namespace {

std::vector<CheckResult> suite_ladder() {
  std::vector<CheckResult> out;
  const GaussLadder lad(12);
  const double u = 0.37;
  out.push_back(at_most("P_1(u) = u - 1", std::abs(lad.polynomial(1, u) - (u - 1.0)), 1e-15));
  out.push_back(at_most("P_2(u) = u^2 - 4u + 2", std::abs(lad.polynomial(2, u) - (u * u - 4.0 * u + 2.0)), 1e-15));
  out.push_back(at_most("(-Delta) G(1, 0) = 1/(4 pi)", std::abs(lap_pow_gauss(1, 1.0, {0, 0}) - 1.0 / (4.0 * kPi)), 1e-15));
  out.push_back(at_most("(-Delta)^2 G(1, 0) = 1/(2 pi)", std::abs(lap_pow_gauss(2, 1.0, {0, 0}) - 1.0 / (2.0 * kPi)), 1e-15));

  double table_gap = 0.0;
  for (int k = 0; k <= 12; ++k) {
    for (Vec2 x : {Vec2{0.3, -0.2}, Vec2{1.7, 0.9}, Vec2{-3.1, 2.2}}) {
      const double a = lap_pow_gauss(k, 1.3, x);
      const double b = lad.lap_pow(k, 1.3, x);
      table_gap = std::max(table_gap, std::abs(a - b) / std::max(std::abs(a), std::pow(1.3, -k) * 1e-3));
    }
  }
  out.push_back(at_most("recurrence table vs Laguerre route, k <= 12", table_gap, 1e-10));

  const Grid g = make_grid(128, 40.0);
  double spectral_gap = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const Field closed = Field::sample(g, [&](double x1, double x2) { return lap_pow_gauss(k, 1.0, {x1, x2}); });
    Spectrum delta(g);
    for (auto& v : delta.coeffs()) v = 1.0;  // continuous transform of a point mass at the origin
    const auto op = multipliers::heat_laplacian_power(k, 1.0);
    const Field spectral = inverse_continuous(apply(op, delta));
    spectral_gap = std::max(spectral_gap, (closed - spectral).max_abs() / closed.max_abs());
  }
  out.push_back(at_most("(-Delta)^k G(1) vs |xi|^{2k} e^{-|xi|^2} on a delta, k <= 6", spectral_gap, 1e-8));

  const double h = 1e-4;
  double fd_gap = 0.0;
  for (int k = 0; k <= 5; ++k) {
    for (Vec2 x : {Vec2{0.4, 0.1}, Vec2{1.2, -0.7}, Vec2{0.0, 2.5}}) {
      const double lhs = lap_pow_gauss(k + 1, 1.0, x);
      const double rhs = -(lap_pow_gauss(k, 1.0 + h, x) - lap_pow_gauss(k, 1.0 - h, x)) / (2.0 * h);
      fd_gap = std::max(fd_gap, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-3));
    }
  }
  out.push_back(at_most("(-Delta)^{k+1} G = -d_t (-Delta)^k G by central differences", fd_gap, 1e-6));
  return out;
}

double max_rel_scaling(const std::function<double(double, Vec2)>& term) {
  double worst = 0.0;
  for (double lambda : {0.5, 2.0}) {
    for (Vec2 x : {Vec2{0.3, 0.8}, Vec2{-1.1, 0.4}, Vec2{2.0, -1.5}, Vec2{0.05, 0.02}}) {
      const double a = lambda * lambda * lambda * term(lambda * lambda * 1.0, {lambda * x[0], lambda * x[1]});
      const double b = term(1.0, x);
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> scaling_checks() {
  std::vector<CheckResult> out;
  const Vec2 a{1.0, 0.5};
  const Vec2 m1{0.7, -0.4};
  out.push_back(at_most("scaling: M1 . grad G",
                        max_rel_scaling([&](double t, Vec2 x) {
                          const Vec2 gr = grad_gauss(t, x);
                          return m1[0] * gr[0] + m1[1] * gr[1];
                        }),
                        1e-10, "lambda in {1/2, 2}"));
  out.push_back(at_most("scaling: J1 (CD)", max_rel_scaling([&](double t, Vec2 x) { return j1_cd(t, x, 1.2, a).value; }),
                        1e-10, "lambda in {1/2, 2}"));
  out.push_back(at_most("scaling: J1 (FR)", max_rel_scaling([&](double t, Vec2 x) { return j1_fr(t, x, 1.2).value; }),
                        1e-10, "lambda in {1/2, 2}"));
  return out;
}

std::vector<CheckResult> parity_checks() {
  std::vector<CheckResult> out;
  const Grid g = make_grid(128, 40.0);
  const std::size_t n = g.n();
  const Field fr = ExpansionTerm{TermKind::j1_fr, {1.0, {0, 0}, {0, 0}, 0.0, kDefaultSeriesTerms}}.sample(g, 1.0);
  const Field cd = ExpansionTerm{TermKind::j1_cd, {1.0, {0, 0}, {1.0, 0.5}, 1.0, kDefaultSeriesTerms}}.sample(g, 1.0);
  auto mirror = [n](std::size_t i) { return (n - i) % n; };
  double dihedral = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = fr(i, j);
      for (double w : {fr(j, i), fr(mirror(i), j), fr(i, mirror(j)), fr(mirror(j), i), fr(mirror(i), mirror(j))}) {
        dihedral = std::max(dihedral, std::abs(v - w));
      }
      odd = std::max(odd, std::abs(cd(i, j) + cd(mirror(i), mirror(j))));
    }
  }
  out.push_back(at_most("J1 (FR) invariant under the grid's dihedral group (relative)", dihedral / fr.max_abs(), 1e-10));
  out.push_back(at_most("J1 (CD) odd under x -> -x (relative)", odd / cd.max_abs(), 1e-10));
  return out;
}

std::vector<CheckResult> oracle_checks(bool convection_and_fr, bool qg) {
  std::vector<CheckResult> out;
  if (convection_and_fr) {
    const Grid g = make_grid(128, 40.0);
    const ModelSpec cd{ModelKind::cd, {1.0, 0.5}};
    const auto o = duhamel_oracle(cd, 1.0, g, 1.0);
    const Field s = ExpansionTerm{TermKind::j1_cd, {1.0, {0, 0}, cd.a, 1.0, kDefaultSeriesTerms}}.sample(g, 1.0);
    std::ostringstream d;
    d << "t=1, N=128, L=40; oracle error estimate " << o.error_estimate;
    out.push_back(at_most("J1 (CD) series vs Duhamel oracle (relative L^inf)", (o.value - s).max_abs() / s.max_abs(), 1e-6, d.str()));

    const double m0 = -0.8;
    const ModelSpec cd2{ModelKind::cd2, {1.0, 0.5}};
    const auto o2 = duhamel_oracle(cd2, 1.0, g, m0);
    const Field s2 = ExpansionTerm{TermKind::j1_cd, {m0, {0, 0}, cd2.a, m0 * m0, kDefaultSeriesTerms}}.sample(g, 1.0);
    out.push_back(at_most("J1 (CD2) = series with M0^2 (M0 = -0.8, relative L^inf)", (o2.value - s2).max_abs() / s2.max_abs(), 1e-6));

    const ModelSpec fr{ModelKind::fr, {0, 0}};
    const auto of = duhamel_oracle(fr, 1.0, g, 1.0);
    const Field sf = ExpansionTerm{TermKind::j1_fr, {1.0, {0, 0}, {0, 0}, 0.0, kDefaultSeriesTerms}}.sample(g, 1.0);
    std::ostringstream e;
    e << "t=1, N=128, L=40; oracle error estimate " << of.error_estimate;
    out.push_back(at_most("J1 (FR) series vs Duhamel oracle (relative L^inf)", (of.value - sf).max_abs() / sf.max_abs(), 1e-4, e.str()));
  }
  if (qg) {
    const ModelSpec qgm{ModelKind::qg, {0, 0}};
    const double m0 = 1.0;
    for (double t : {1.0, 4.0, 16.0}) {
      const double length = 40.0 * std::sqrt(t);
      const Grid g = make_grid(128, length);
      const auto o = duhamel_oracle(qgm, t, g, m0);
      std::ostringstream name;
      name << "QG Duhamel oracle vanishes, t=" << t;
      std::ostringstream d;
      d << "|J1|_inf vs 1e-8 M0^2 t^{-3/2}; N=128, L=" << length << ", error estimate " << o.error_estimate;
      out.push_back(at_most(name.str(), o.value.max_abs(), 1e-8 * m0 * m0 * std::pow(t, -1.5), d.str()));
    }
  }
  return out;
}

namespace {

std::vector<CheckResult> suite_series() {
  std::vector<CheckResult> out = scaling_checks();
  for (auto& c : parity_checks()) out.push_back(std::move(c));
  out.push_back(at_most("J1 (FR) k=0 term at t=1, x=0 equals -1/(32 pi sqrt(2 pi))",
                        std::abs(j1_fr(1.0, {0, 0}, 1.0, 1, kInf).value + 1.0 / (32.0 * kPi * std::sqrt(2.0 * kPi))),
                        1e-15));
  out.push_back(at_most("J1 (CD) relative tail bound at default K", j1_convection_relative_tail(kDefaultSeriesTerms),
                        kSeriesTailTolerance));
  out.push_back(at_most("J1 (FR) relative tail bound at default K", j1_fr_relative_tail(kDefaultSeriesTerms),
                        kSeriesTailTolerance));

  // Norm self-similarity on a t-scaled grid.
  const Vec2 a{1.0, 0.0};
  const ExpansionTerm term{TermKind::j1_cd, {1.0, {0, 0}, a, 1.0, kDefaultSeriesTerms}};
  const Field base = term.sample(make_grid(256, 40.0), 1.0);
  double worst = 0.0;
  for (double t : {4.0, 16.0}) {
    const Field ft = term.sample(make_grid(256, 40.0 * std::sqrt(t)), t);
    for (double q : {1.0, 2.0, kInf}) {
      const double gamma = std::isinf(q) ? 1.0 : 1.0 - 1.0 / q;
      const double pred = std::pow(t, -gamma - 0.5) * lq_norm(base, q);
      worst = std::max(worst, std::abs(lq_norm(ft, q) - pred) / pred);
    }
  }
  out.push_back(at_most("||J1 (CD)(t)||_q = t^{-gamma_q - 1/2} ||J1 (CD)(1)||_q", worst, 1e-6, "t in {4, 16}, q in {1, 2, inf}"));

  // Independence of a . grad (-Delta)^k G, k = 1..3.
  const Grid g = make_grid(128, 40.0);
  std::vector<Field> fs;
  for (int k = 1; k <= 3; ++k) {
    fs.push_back(Field::sample(g, [&](double x1, double x2) {
      const Vec2 v = grad_lap_pow_gauss(k, 1.0, {x1, x2});
      return a[0] * v[0] + a[1] * v[1];
    }));
  }
  double worst_cos = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double c = inner_product(fs[i], fs[j]) / std::sqrt(inner_product(fs[i], fs[i]) * inner_product(fs[j], fs[j]));
      worst_cos = std::max(worst_cos, std::abs(c));
    }
  }
  out.push_back(at_most("a . grad (-Delta)^k G, k=1..3, pairwise |cos|", worst_cos, 0.99));
  return out;
}

std::vector<CheckResult> suite_flux() {
  std::vector<CheckResult> out;
  const Grid g = make_grid(128, 40.0);
  const double dx2 = g.dx() * g.dx();
  auto integral = [dx2](const Field& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * dx2;
  };
  const Field gg = sample_gauss(g, 1.0);
  {
    const VectorField f = nonlinear_flux({ModelKind::qg, {0, 0}}, gg);
    const auto grad = multipliers::gradient();
    const Field div = apply_multiplier(grad.c1, f.x1) + apply_multiplier(grad.c2, f.x2);
    out.push_back(at_most("QG radial: int f[u] dx = 0", std::hypot(integral(f.x1), integral(f.x2)), 1e-10));
    out.push_back(at_most("QG radial: int div f[u] dx = 0", std::abs(integral(div)), 1e-10));
  }
  {
    const VectorField f = nonlinear_flux({ModelKind::cd, {1.0, 0.0}}, gg);
    out.push_back(at_most("CD: int f[G(1)] dx = (1/(8 pi), 0)",
                          std::hypot(integral(f.x1) - 1.0 / (8.0 * kPi), integral(f.x2)), 1e-6));
  }
  {
    const VectorField f = nonlinear_flux({ModelKind::fr, {0, 0}}, gg);
    out.push_back(at_most("FR: int G R G dx = 0", std::hypot(integral(f.x1), integral(f.x2)), 1e-10));
  }
  return out;
}

const std::map<std::string, std::function<std::vector<CheckResult>()>>& suites() {
  static const std::map<std::string, std::function<std::vector<CheckResult>()>> s{
      {"subordination", suite_subordination},
      {"identities", suite_identities},
      {"skew", suite_skew},
      {"riesz", [] { return riesz_oracle_checks(2048, 512.0); }},
      {"ladder", suite_ladder},
      {"series", suite_series},
      {"oracle", [] { return oracle_checks(true, true); }},
      {"flux", suite_flux},
  };
  return s;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, _] : suites()) names.push_back(k);
  names.push_back("all");
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& name) {
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& [_, fn] : suites()) {
      for (auto& c : fn()) out.push_back(std::move(c));
    }
    return out;
  }
  const auto it = suites().find(name);
  if (it == suites().end()) throw ConfigError("verify: unknown suite '" + name + "'");
  return it->second();
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    out << (c.passed ? "  ok   " : "  FAIL ") << c.name << ": " << std::setprecision(3) << std::scientific << c.value
        << " (limit " << c.tolerance << ")" << std::defaultfloat;
    if (!c.detail.empty()) out << " [" << c.detail << "]";
    out << '\n';
  }
}

}  // namespace driftlab
