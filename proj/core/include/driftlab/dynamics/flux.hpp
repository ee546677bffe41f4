#pragma once

#include <vector>

#include "driftlab/dynamics/model.hpp"
#include "driftlab/spectral/field.hpp"

namespace driftlab {

/// f[u] such that the model reads d_t u = Delta u + div f[u]. Products are
/// formed pointwise and then 2/3-dealiased.
VectorField nonlinear_flux(const ModelSpec& model, const Field& u);

/// Reusable evaluator of the spectral right-hand side N(u^) = i xi . F[f[u]].
/// Holds per-grid symbol tables; one instance per thread.
class FluxEvaluator {
 public:
  FluxEvaluator(const Grid& grid, ModelSpec model);

  struct Result {
    Spectrum rhs;
    double max_velocity = 0.0;
    Vec2 flux_integral{0.0, 0.0};  ///< \int f[u] dx
  };

  Result evaluate(const Spectrum& u_hat) const;
  /// Physical dealiased flux, as returned by nonlinear_flux().
  VectorField flux(const Spectrum& u_hat) const;

  const Grid& grid() const { return grid_; }
  const ModelSpec& model() const { return model_; }
  /// |xi|^2 on the half spectrum.
  const std::vector<double>& wavenumber_squared() const { return k2_; }

 private:
  struct Products {
    Field f1;
    Field f2;
    double max_velocity;
  };
  Products products(const Spectrum& u_hat) const;

  Grid grid_;
  ModelSpec model_;
  std::vector<double> kx_;  // odd-symbol wavenumbers, Nyquist zeroed
  std::vector<double> ky_;
  std::vector<double> k2_;
  std::vector<double> inv_norm_;  // 1/|xi|, 0 at xi = 0
  std::vector<unsigned char> keep_;
};

}  // namespace driftlab
