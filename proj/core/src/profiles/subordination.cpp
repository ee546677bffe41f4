#include "driftlab/profiles/subordination.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "driftlab/profiles/gauss_ladder.hpp"

namespace driftlab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPrefactor = 1.0 / (2.0 * std::sqrt(kPi));

// e^{-z} (I_1(z) - I_0(z)) from the large-argument expansion
// e^{-z} I_nu(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! (8z)^k).
double scaled_bessel_diff_asymptotic(double z) {
  double t0 = 1.0;
  double t1 = 1.0;
  double s = 0.0;  // sum of (term for nu=1) - (term for nu=0)
  for (int k = 1; k <= 30; ++k) {
    const double odd = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    t0 *= -(0.0 - odd) / (k * 8.0 * z);
    t1 *= -(4.0 - odd) / (k * 8.0 * z);
    s += t1 - t0;
    if (std::abs(t1 - t0) < 1e-17 * std::abs(s)) break;
  }
  return s / std::sqrt(2.0 * kPi * z);
}

double scaled_bessel_diff(double z) {
  if (z > 500.0) return scaled_bessel_diff_asymptotic(z);
  return std::exp(-z) * (std::cyl_bessel_i(1.0, z) - std::cyl_bessel_i(0.0, z));
}

template <class F>
double half_line(F&& f, const char* what) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(f, 1e-13, &err, &l1);
  if (!std::isfinite(v) || err > 1e-9 * std::max(l1, 1e-300)) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge (error estimate " +
                          std::to_string(err) + ")");
  }
  return v;
}

}  // namespace

double subordination_integral(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("subordination_integral: r must be positive");
  const double r2 = r * r;
  const double v = half_line(
      [r2](double l) {
        if (l <= 0.0 || !std::isfinite(l)) return 0.0;
        return std::pow(l, -1.5) * std::exp(-0.25 / l - l * r2);
      },
      "subordination_integral");
  return kPrefactor * v;
}

double subordination_check(const std::vector<double>& r_values) {
  double worst = 0.0;
  for (double r : r_values) worst = std::max(worst, std::abs(std::exp(-r) - subordination_integral(r)));
  return worst;
}

Vec2 riesz_gauss_subordinated(double t, Vec2 x) {
  if (!(t > 0.0)) throw std::invalid_argument("riesz_gauss_subordinated: t must be positive");
  // grad^perp G(tau, x) = -(x^perp / (2 tau)) G(tau, x), x^perp = (-x2, x1).
  auto inner = [&](double sigma) {
    if (!std::isfinite(sigma)) return 0.0;
    if (sigma <= 0.0) sigma = 0.0;
    return half_line(
        [&, sigma](double l) {
          if (l <= 0.0 || !std::isfinite(l)) return 0.0;
          const double tau = t + sigma * sigma * l;
          if (!std::isfinite(tau)) return 0.0;
          return std::pow(l, -1.5) * std::exp(-0.25 / l) * gauss(tau, x) / (2.0 * tau);
        },
        "riesz_gauss_subordinated (inner)");
  };
  const double s = kPrefactor * half_line(inner, "riesz_gauss_subordinated (outer)");
  return {x[1] * s, -x[0] * s};
}

double riesz_gauss_radial(double r) {
  return std::sqrt(kPi) / (16.0 * kPi) * scaled_bessel_diff(r * r / 8.0);
}

Vec2 riesz_gauss_closed_form(double t, Vec2 x) {
  if (!(t > 0.0)) throw std::invalid_argument("riesz_gauss_closed_form: t must be positive");
  const double r = std::hypot(x[0], x[1]) / std::sqrt(t);
  const double s = riesz_gauss_radial(r) * std::pow(t, -1.5);
  return {x[0] * s, x[1] * s};
}

}  // namespace driftlab
