#include "driftlab/harness/fit.hpp"

#include <cmath>
#include <string>

namespace driftlab {

FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& norms) {
  const std::size_t n = times.size();
  if (n != norms.size()) throw std::invalid_argument("fit_decay: times and norms differ in length");
  if (n < 8) throw std::invalid_argument("fit_decay: need at least 8 samples, got " + std::to_string(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (!(times[k] > 0.0)) throw std::invalid_argument("fit_decay: times must be positive");
    if (k && !(times[k] > times[k - 1])) throw std::invalid_argument("fit_decay: times must increase strictly");
    if (!(norms[k] > 0.0)) {
      throw NonPositiveNorm("fit_decay: norm " + std::to_string(norms[k]) + " at t=" + std::to_string(times[k]) +
                            " is not positive (below the quadrature floor)");
    }
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(times[k]);
    my += std::log(norms[k]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = std::log(times[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(norms[k]) - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = std::log(norms[k]) - (r.intercept + r.slope * std::log(times[k]));
    ss += e * e;
  }
  r.stderr_slope = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  r.points = n;
  return r;
}

}  // namespace driftlab
