#pragma once

#include <stdexcept>

#include "driftlab/dynamics/flux.hpp"

namespace driftlab {

class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrating-factor RK4 for u^_t = -|xi|^2 u^ + N(u^). Diffusion is
/// propagated exactly by e^{-dt |xi|^2}; the zero mode of N vanishes, so mass
/// is conserved to rounding.
class Stepper {
 public:
  Stepper(const Grid& grid, ModelSpec model);

  Spectrum step(const Spectrum& u_hat, double dt) const;
  /// Same, reusing the stage-1 evaluation N(u_hat) already computed by the caller.
  Spectrum step(const Spectrum& u_hat, double dt, const Spectrum& k1) const;

  const FluxEvaluator& evaluator() const { return eval_; }

 private:
  FluxEvaluator eval_;
};

/// One IF-RK4 step in physical space. Throws StabilityError if the max norm
/// grows more than tenfold.
Field step(const Field& u, const ModelSpec& model, double dt);

}  // namespace driftlab
