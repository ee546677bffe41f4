#pragma once

#include <vector>

#include "driftlab/spectral/grid.hpp"

namespace driftlab {

inline constexpr int kDefaultLadderMax = 64;

/// Beyond this value of u = |x|^2/(4t) every Gaussian term is returned as 0.
inline constexpr double kGaussCutoff = 700.0;

/// Polynomials P_k with (-d_t)^k G(t,x) = (-1)^k t^{-k} P_k(u) G(t,x),
/// built from P_0 = 1, P_{k+1} = (u - 1 - k) P_k - u P_k'.
///
/// Since d_t G = Delta G, (-Delta)^k G = (-1)^k t^{-k} P_k(u) G. The same
/// quantity equals t^{-k} k! L_k(u) G with L_k the Laguerre polynomial; the
/// point evaluators below use the Laguerre recurrence, which stays accurate
/// for large k where the monomial coefficients of P_k cancel badly.
class GaussLadder {
 public:
  explicit GaussLadder(int k_max = kDefaultLadderMax);

  int k_max() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Monomial coefficients of P_k, lowest degree first.
  const std::vector<double>& coefficients(int k) const;
  double polynomial(int k, double u) const;
  /// (-Delta)^k G(t, x) from the stored table (Horner). Use for k <~ 15.
  double lap_pow(int k, double t, Vec2 x) const;

 private:
  std::vector<std::vector<double>> coeffs_;
};

/// Generalised Laguerre polynomial L_n^{(alpha)}(u) by the three-term recurrence.
double laguerre(int n, double alpha, double u);

/// G(t, x) = (4 pi t)^{-1} exp(-|x|^2 / (4t)).
double gauss(double t, Vec2 x);
/// -x/(2t) G(t, x).
Vec2 grad_gauss(double t, Vec2 x);
/// (-Delta)^k G(t, x) = t^{-k} k! L_k(u) G(t, x).
double lap_pow_gauss(int k, double t, Vec2 x);
/// grad (-Delta)^k G(t, x) = -x/(2t) t^{-k} k! L_k^{(1)}(u) G(t, x).
Vec2 grad_lap_pow_gauss(int k, double t, Vec2 x);

}  // namespace driftlab
