#include "driftlab/profiles/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "driftlab/profiles/gauss_ladder.hpp"
#include "driftlab/profiles/subordination.hpp"
#include "driftlab/spectral/fft.hpp"

namespace driftlab {

namespace {

constexpr double kPi = std::numbers::pi;
// H = G(1) R G(1) is Gaussian-localised: its transform is below 1e-25 past
// rho = 12, and g(r) r^2 is below 1e-20 past r = 14.
constexpr double kRhoMax = 12.0;
constexpr double kRadiusMax = 14.0;

struct Rule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

Rule gauss_legendre(int n) {
  const auto zeros = boost::math::legendre_p_zeros<double>(n);  // non-negative half
  Rule r;
  auto add = [&](double x) {
    const double d = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * d * d);
    r.nodes.push_back(0.5 * (x + 1.0));
    r.weights.push_back(0.5 * w);
  };
  for (double z : zeros) {
    add(z);
    if (z != 0.0) add(-z);
  }
  return r;
}

// Chebyshev interpolant of k(rho) on [0, kRhoMax].
class ProfileTable {
 public:
  explicit ProfileTable(int nodes) : coeffs_(static_cast<std::size_t>(nodes), 0.0) {
    const int n = nodes;
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double c = std::cos(kPi * (j + 0.5) / n);
      f[j] = riesz_product_profile(0.5 * kRhoMax * (c + 1.0));
    }
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += f[j] * std::cos(kPi * k * (j + 0.5) / n);
      coeffs_[k] = (k == 0 ? 1.0 : 2.0) * s / n;
    }
  }

  double operator()(double rho) const {
    if (rho >= kRhoMax) return 0.0;
    const double y = 2.0 * rho / kRhoMax - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
      const double b0 = 2.0 * y * b1 - b2 + coeffs_[k];
      b2 = b1;
      b1 = b0;
    }
    return y * b1 - b2 + coeffs_[0];
  }

 private:
  std::vector<double> coeffs_;
};

// One Duhamel evaluation with a fixed s-rule, in continuous-transform convention.
Spectrum duhamel_spectrum(const ModelSpec& model, double t, const Grid& grid, double m0, const Rule& rule,
                          const ProfileTable* table, double cutoff) {
  using cd = std::complex<double>;
  Spectrum out(grid);
  const std::size_t n = grid.n();
  const std::size_t cols = grid.spectral_cols();
  const bool convection = model.uses_drift_vector();
  const double c = convection ? (model.kind == ModelKind::cd ? std::abs(m0) * m0 : m0 * m0) : 0.0;
  const double sqrt_t = std::sqrt(t);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double k1 = grid.wavenumber(i);
      const double k2 = grid.wavenumber(j);
      const double q = k1 * k1 + k2 * k2;
      if (t * q > cutoff) continue;
      const bool nyquist = grid.is_nyquist(i) || grid.is_nyquist(j);
      cd value = 0.0;
      if (convection) {
        if (nyquist || q == 0.0) continue;
        // (i a.xi)(c / 8 pi) \int_0^t (e^{-(t - s/2) q} - e^{-t q}) / s ds
        double integral = 0.0;
        for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
          const double s = t * rule.nodes[m];
          const double v = std::exp(-t * q) * std::expm1(0.5 * s * q) / s;
          integral += rule.weights[m] * v;
        }
        integral *= t;
        value = cd(0.0, model.a[0] * k1 + model.a[1] * k2) * (c / (8.0 * kPi)) * integral;
      } else {
        // s = v^2: 2v F(v^2, xi) = 2 M0^2 k(v |xi|) (i xi) for FR, (-i xi^perp) for QG.
        const double norm = std::sqrt(q);
        cd acc = 0.0;
        for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
          const double v = sqrt_t * rule.nodes[m];
          const double kv = (*table)(v * norm);
          const double w = 2.0 * m0 * m0 * kv;
          cd f1, f2;
          if (model.kind == ModelKind::fr) {
            f1 = cd(0.0, w * k1);
            f2 = cd(0.0, w * k2);
          } else {
            f1 = cd(0.0, w * k2);
            f2 = cd(0.0, -w * k1);
          }
          const cd div = cd(0.0, k1) * f1 + cd(0.0, k2) * f2;
          acc += rule.weights[m] * div * std::exp(-(t - v * v) * q);
        }
        // The subtraction term carries \int f[M0 G](s) dy = F(s, 0) = 0 here.
        value = acc * sqrt_t;
        if (nyquist && model.kind == ModelKind::qg) value = 0.0;
      }
      out(i, j) = value;
    }
  }
  return out;
}

}  // namespace

void OracleConfig::validate() const {
  if (nodes < 64) throw ConfigError("oracle: at least 64 quadrature nodes are required");
  if (table_nodes < 16) throw ConfigError("oracle: table_nodes must be >= 16");
  if (!(decay_cutoff > 0.0)) throw ConfigError("oracle: decay_cutoff must be positive");
}

double riesz_product_profile(double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("riesz_product_profile: rho must be >= 0");
  auto integrand = [rho](double r) {
    const double g = gauss(1.0, {r, 0.0}) * riesz_gauss_radial(r);
    // J_1(rho r) / rho -> r/2 as rho -> 0.
    const double j1_over_rho = rho * r < 1e-8 ? 0.5 * r : std::cyl_bessel_j(1.0, rho * r) / rho;
    return g * r * r * j1_over_rho;
  };
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, kRadiusMax, 20, 1e-12, &err);
  // |k| peaks near 4e-3 at rho = 0; judge the error against that scale.
  if (!std::isfinite(v) || err > 1e-15) {
    throw QuadratureError("riesz_product_profile: Hankel quadrature did not converge");
  }
  return -2.0 * kPi * v;
}

OracleResult duhamel_oracle(const ModelSpec& model, double t, const Grid& grid, double m0, const OracleConfig& cfg) {
  cfg.validate();
  model.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("oracle: t must be positive");

  std::unique_ptr<ProfileTable> table;
  if (!model.uses_drift_vector()) table = std::make_unique<ProfileTable>(cfg.table_nodes);

  const Rule coarse = gauss_legendre(cfg.nodes);
  const Rule fine = gauss_legendre(2 * cfg.nodes);
  Field a = inverse_continuous(duhamel_spectrum(model, t, grid, m0, coarse, table.get(), cfg.decay_cutoff));
  Field b = inverse_continuous(duhamel_spectrum(model, t, grid, m0, fine, table.get(), cfg.decay_cutoff));
  const double est = (a - b).max_abs();
  if (!b.all_finite()) throw QuadratureError("oracle: non-finite result");
  if (cfg.tolerance > 0.0 && est > cfg.tolerance) {
    throw QuadratureError("oracle: error estimate " + std::to_string(est) + " exceeds tolerance " +
                          std::to_string(cfg.tolerance));
  }
  return {std::move(b), est};
}

}  // namespace driftlab
