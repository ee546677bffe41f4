#pragma once

#include <stdexcept>
#include <vector>

#include "driftlab/spectral/grid.hpp"

namespace driftlab {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (1 / (2 sqrt(pi))) \int_0^inf l^{-3/2} e^{-1/(4l)} e^{-l r^2} dl, which equals e^{-r}.
double subordination_integral(double r);

/// max |e^{-r} - subordination_integral(r)| over the given radii.
double subordination_check(const std::vector<double>& r_values);

/// R^perp G(t)(x) from the double integral
///   (1 / (2 sqrt(pi))) \int_0^inf \int_0^inf l^{-3/2} e^{-1/(4l)} grad^perp G(t + s^2 l, x) dl ds.
Vec2 riesz_gauss_subordinated(double t, Vec2 x);

/// R G(t)(x) in closed form: x t^{-3/2} (sqrt(pi)/(16 pi)) e^{-z} (I_1(z) - I_0(z)), z = |x|^2/(8t).
Vec2 riesz_gauss_closed_form(double t, Vec2 x);
/// Radial factor of riesz_gauss_closed_form at t = 1: R G(1)(x) = x * riesz_gauss_radial(|x|).
double riesz_gauss_radial(double r);

}  // namespace driftlab
