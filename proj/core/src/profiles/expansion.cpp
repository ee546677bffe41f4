#include "driftlab/profiles/expansion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "driftlab/profiles/gauss_ladder.hpp"

namespace driftlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_terms(int terms) {
  if (terms < 1 || terms > kDefaultLadderMax) {
    throw ConfigError("series: number of terms must be in [1, " + std::to_string(kDefaultLadderMax) + "]");
  }
}

// Bound weights: |L_k^{(alpha)}(u)| e^{-u/2} <= binom(k + alpha, k) for alpha in {0, 1}.
double convection_weight(int k) { return (k + 1.0) * std::ldexp(1.0, -k) / k; }

// (1/2)^{k+1/2} (2k-1)!! (k+1) / (2k+2)!!, generated by ratios to stay in range.
template <class F>
void for_each_fr_coefficient(int count, F&& fn) {
  double ratio = 0.5;  // (2k-1)!!/(2k+2)!! at k = 0
  double half = std::sqrt(0.5);
  for (int k = 0; k < count; ++k) {
    fn(k, half * ratio * (k + 1.0));
    ratio *= (2.0 * k + 1.0) / (2.0 * k + 4.0);
    half *= 0.5;
  }
}

double tail_sum(int from, double (*weight)(int)) {
  double s = 0.0;
  for (int k = from;; ++k) {
    const double w = weight(k);
    s += w;
    if (w < 1e-30 * s) break;
  }
  return s;
}

}  // namespace

double convection_mass(ModelKind kind, double m0) {
  switch (kind) {
    case ModelKind::cd: return std::abs(m0) * m0;
    case ModelKind::cd2: return m0 * m0;
    default: throw ConfigError("convection_mass: only CD and CD2 carry a drift vector");
  }
}

double logshift_term(double t, Vec2 x, double m0, Vec2 a) {
  const Vec2 g = grad_gauss(t, x);
  return std::abs(m0) * m0 / (8.0 * kPi) * std::log(t) * (a[0] * g[0] + a[1] * g[1]);
}

double j1_convection_relative_tail(int terms) {
  check_terms(terms);
  return tail_sum(terms + 1, convection_weight) / convection_weight(1);
}

double j1_fr_relative_tail(int terms) {
  check_terms(terms);
  double first = 0.0;
  double tail = 0.0;
  // Coefficients fall like 2^{-k}; 200 more terms exhaust double precision.
  for_each_fr_coefficient(terms + 200, [&](int k, double c) {
    if (k == 0) first = c;
    if (k >= terms) tail += c;
  });
  return tail / first;
}

SeriesValue j1_convection(double t, Vec2 x, double c, Vec2 a, int terms, double tail_tolerance) {
  const double rel = j1_convection_relative_tail(terms);
  if (rel > tail_tolerance) {
    throw TruncationError("j1_cd: " + std::to_string(terms) + " terms leave relative tail " + std::to_string(rel));
  }
  const double g = gauss(t, x);
  const double ax = a[0] * x[0] + a[1] * x[1];
  if (g == 0.0 || c == 0.0 || ax == 0.0) return {0.0, 0.0};
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);

  // sum_{k>=1} 2^{-k} L_k^{(1)}(u) / k with the alpha = 1 recurrence.
  double prev = 1.0;
  double cur = 2.0 - u;
  double sum = 0.5 * cur;
  for (int k = 1; k < terms; ++k) {
    const double next = ((2.0 * k + 2.0 - u) * cur - (k + 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    sum += std::ldexp(cur, -(k + 1)) / (k + 1.0);
  }
  const double pref = -c / (8.0 * kPi) * ax / (2.0 * t);
  const double envelope = std::exp(-0.5 * u) / (4.0 * kPi * t);
  return {pref * g * sum, std::abs(pref) * envelope * rel * convection_weight(1)};
}

SeriesValue j1_cd(double t, Vec2 x, double m0, Vec2 a, int terms, double tail_tolerance) {
  return j1_convection(t, x, std::abs(m0) * m0, a, terms, tail_tolerance);
}

SeriesValue j1_fr(double t, Vec2 x, double m0, int terms, double tail_tolerance) {
  const double rel = j1_fr_relative_tail(terms);
  if (rel > tail_tolerance) {
    throw TruncationError("j1_fr: " + std::to_string(terms) + " terms leave relative tail " + std::to_string(rel));
  }
  const double g = gauss(t, x);
  if (g == 0.0 || m0 == 0.0) return {0.0, 0.0};
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);

  double prev = 1.0;     // L_0
  double cur = 1.0 - u;  // L_1
  double sum = 0.0;
  double first = 0.0;
  for_each_fr_coefficient(terms, [&](int k, double coef) {
    if (k == 0) first = coef;
    const int n = k + 1;  // cur holds L_n
    sum += coef * cur;
    const double next = ((2.0 * n + 1.0 - u) * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  });
  const double pref = -m0 * m0 / (4.0 * std::sqrt(kPi)) / std::sqrt(t);
  const double envelope = std::exp(-0.5 * u) / (4.0 * kPi * t);
  return {pref * g * sum, std::abs(pref) * envelope * rel * first};
}

double ExpansionTerm::operator()(double t, Vec2 x) const {
  const auto& p = params;
  switch (kind) {
    case TermKind::leading: return p.m0 * gauss(t, x);
    case TermKind::moment: {
      const Vec2 g = grad_gauss(t, x);
      return p.m1[0] * g[0] + p.m1[1] * g[1];
    }
    case TermKind::logshift: {
      const Vec2 g = grad_gauss(t, x);
      return p.flux_mass / (8.0 * kPi) * std::log(t) * (p.a[0] * g[0] + p.a[1] * g[1]);
    }
    case TermKind::j1_cd: return j1_convection(t, x, p.flux_mass, p.a, p.terms).value;
    case TermKind::j1_fr: return j1_fr(t, x, p.m0, p.terms).value;
  }
  return 0.0;
}

Field ExpansionTerm::sample(const Grid& grid, double t) const {
  return Field::sample(grid, [&](double x1, double x2) { return (*this)(t, {x1, x2}); });
}

StackFlags StackFlags::full(ModelKind kind) {
  StackFlags f;
  f.moment = true;
  f.logshift = kind == ModelKind::cd || kind == ModelKind::cd2;
  f.j1 = kind != ModelKind::qg;
  return f;
}

Field expansion_stack(const ModelSpec& model, double t, const Grid& grid, double m0, Vec2 m1, StackFlags flags,
                      int terms) {
  model.validate();
  const ModelKind kind = model.kind;
  if (flags.logshift && (kind == ModelKind::qg || kind == ModelKind::fr)) {
    throw ConfigError("expansion_stack: no logarithmic shift for " + std::string(to_string(kind)) +
                      " (its leading flux integrates to zero)");
  }
  if (flags.j1 && kind == ModelKind::qg) {
    throw ConfigError("expansion_stack: the QG distortion term vanishes identically; drop the J1 flag");
  }
  if (!(t > 0.0)) throw ConfigError("expansion_stack: t must be positive");

  ExpansionParams p;
  p.m0 = m0;
  p.m1 = m1;
  p.a = model.a;
  p.terms = terms;
  if (model.uses_drift_vector()) p.flux_mass = convection_mass(kind, m0);

  std::vector<ExpansionTerm> stack;
  if (flags.leading) stack.push_back({TermKind::leading, p});
  if (flags.moment) stack.push_back({TermKind::moment, p});
  if (flags.logshift) stack.push_back({TermKind::logshift, p});
  if (flags.j1) stack.push_back({kind == ModelKind::fr ? TermKind::j1_fr : TermKind::j1_cd, p});

  Field out(grid);
  for (const auto& term : stack) out += term.sample(grid, t);
  return out;
}

}  // namespace driftlab
