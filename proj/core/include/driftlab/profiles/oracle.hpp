#pragma once

#include "driftlab/dynamics/model.hpp"
#include "driftlab/profiles/subordination.hpp"
#include "driftlab/spectral/field.hpp"

namespace driftlab {

/// Per-wavenumber time quadrature of the distortion integral
///   J1(t) = \int_0^t \int (grad G(t-s, x-y) - grad G(t, x)) . f[M0 G](s, y) dy ds.
///
/// CD / CD2: f[M0 G](s) = c a G(s)^2 has transform c a e^{-s|xi|^2/2} / (8 pi s);
/// after the subtraction the s-integrand is (e^{s|xi|^2/2} - 1)/s, smooth on [0, t].
/// QG / FR: f[M0 G](s) is self-similar, F(s, xi) = M0^2 s^{-1} H(sqrt(s) xi), with
/// H from a radial Hankel transform of G(1) R G(1); s = v^2 removes the s^{-1/2}
/// endpoint behaviour. Nothing here uses the Laguerre series.
struct OracleConfig {
  /// Gauss-Legendre nodes in s (or v); the error estimate compares against 2x nodes.
  int nodes = 128;
  /// Chebyshev nodes for the Hankel-transform table (QG / FR).
  int table_nodes = 96;
  /// Modes with t |xi|^2 above this contribute below e^{-cutoff/2} and are skipped.
  double decay_cutoff = 80.0;
  /// Absolute tolerance on the error estimate; <= 0 disables the check.
  double tolerance = 0.0;

  void validate() const;
};

struct OracleResult {
  Field value;
  double error_estimate = 0.0;  ///< max |J(nodes) - J(2 nodes)| on the grid
};

OracleResult duhamel_oracle(const ModelSpec& model, double t, const Grid& grid, double m0,
                            const OracleConfig& cfg = {});

/// k(rho) with F[x g(|x|)](eta) = i eta k(|eta|), g = G(1) * (radial factor of R G(1)).
/// Exposed for tests.
double riesz_product_profile(double rho);

}  // namespace driftlab
