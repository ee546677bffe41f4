#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftlab {

/// Raised when a norm is <= 0: the residual sits below the quadrature floor.
class NonPositiveNorm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double q = 0.0;
  std::string level;
  std::size_t points = 0;
};

/// Least-squares line through (log t, log norm). Needs >= 8 samples with
/// strictly increasing positive times.
FitResult fit_decay(const std::vector<double>& times, const std::vector<double>& norms);

}  // namespace driftlab
