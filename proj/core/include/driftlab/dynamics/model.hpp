#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "driftlab/spectral/grid.hpp"

namespace driftlab {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which PDE  d_t u = Delta u + div f[u]  is being solved.
enum class ModelKind {
  qg,   ///< quasi-geostrophic, f = -u R^perp u
  cd,   ///< convection-diffusion, f = a |u| u
  cd2,  ///< Burgers-type convection, f = a u^2
  fr,   ///< forward-Riesz drift, f = u R u
};

struct ModelSpec {
  ModelKind kind = ModelKind::qg;
  Vec2 a{0.0, 0.0};

  /// Throws ConfigError on non-finite a, or a != 0 for QG / FR.
  void validate() const;
  bool uses_drift_vector() const { return kind == ModelKind::cd || kind == ModelKind::cd2; }
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

}  // namespace driftlab
