#include "driftlab/profiles/gauss_ladder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace driftlab {

GaussLadder::GaussLadder(int k_max) {
  if (k_max < 0) throw std::invalid_argument("GaussLadder: k_max must be >= 0");
  coeffs_.reserve(static_cast<std::size_t>(k_max) + 1);
  coeffs_.push_back({1.0});
  for (int k = 0; k < k_max; ++k) {
    const auto& p = coeffs_.back();
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j + 1] += p[j];
      next[j] -= (1.0 + k + static_cast<double>(j)) * p[j];
    }
    coeffs_.push_back(std::move(next));
  }
}

const std::vector<double>& GaussLadder::coefficients(int k) const {
  if (k < 0 || k > k_max()) {
    throw std::out_of_range("GaussLadder: order " + std::to_string(k) + " outside [0, " +
                            std::to_string(k_max()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(k)];
}

double GaussLadder::polynomial(int k, double u) const {
  const auto& c = coefficients(k);
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * u + *it;
  return s;
}

double GaussLadder::lap_pow(int k, double t, Vec2 x) const {
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
  if (u > kGaussCutoff) return 0.0;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(t, -k) * polynomial(k, u) * gauss(t, x);
}

double laguerre(int n, double alpha, double u) {
  if (n < 0) throw std::invalid_argument("laguerre: negative order");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - u;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - u) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("gauss: t must be positive and finite");
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

double gauss(double t, Vec2 x) {
  require_time(t);
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
  if (u > kGaussCutoff) return 0.0;
  return std::exp(-u) / (4.0 * std::numbers::pi * t);
}

Vec2 grad_gauss(double t, Vec2 x) {
  const double g = gauss(t, x);
  return {-x[0] / (2.0 * t) * g, -x[1] / (2.0 * t) * g};
}

double lap_pow_gauss(int k, double t, Vec2 x) {
  if (k < 0) throw std::invalid_argument("lap_pow_gauss: k must be >= 0");
  const double g = gauss(t, x);
  if (g == 0.0) return 0.0;
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
  return std::pow(t, -k) * factorial(k) * laguerre(k, 0.0, u) * g;
}

Vec2 grad_lap_pow_gauss(int k, double t, Vec2 x) {
  if (k < 0) throw std::invalid_argument("grad_lap_pow_gauss: k must be >= 0");
  const double g = gauss(t, x);
  if (g == 0.0) return {0.0, 0.0};
  const double u = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
  const double s = -std::pow(t, -k) * factorial(k) * laguerre(k, 1.0, u) * g / (2.0 * t);
  return {s * x[0], s * x[1]};
}

}  // namespace driftlab
