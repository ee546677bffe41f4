#pragma once

#include <optional>
#include <vector>

#include "driftlab/spectral/field.hpp"

namespace driftlab {

/// amplitude * G(width, x - centre), G the heat kernel: each bump carries
/// mass `amplitude` and variance 2*width per axis.
struct GaussianBump {
  double amplitude = 1.0;
  Vec2 centre{0.0, 0.0};
  double width = 1.0;
};

struct PrescribedMoments {
  double m0 = 1.0;
  Vec2 m1{0.0, 0.0};  ///< -\int x u0 dx
};

struct InitialDataSpec {
  std::vector<GaussianBump> bumps;
  /// When set, bump amplitudes are replaced by the minimum-norm choice that
  /// reproduces these moments (requires >= 3 bumps with non-collinear centres).
  std::optional<PrescribedMoments> target;

  /// Two off-centre bumps, opposite offsets, unequal amplitudes, M0 = 1.
  static InitialDataSpec default_pair();
  /// Four bumps with an isotropic second-moment tensor and M0 = 1, M1 = m1_along_x e1.
  static InitialDataSpec isotropic_quad(double m1_along_x);
};

/// Amplitudes after applying the optional moment target.
std::vector<GaussianBump> resolve_bumps(const InitialDataSpec& spec);

/// Samples the initial data; throws ConfigError if its tail mass exceeds 1e-8.
Field build_initial_field(const Grid& grid, const InitialDataSpec& spec);

}  // namespace driftlab
