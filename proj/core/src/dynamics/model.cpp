#include "driftlab/dynamics/model.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace driftlab {

void ModelSpec::validate() const {
  if (!std::isfinite(a[0]) || !std::isfinite(a[1])) throw ConfigError("model: drift vector a must be finite");
  if (!uses_drift_vector() && (a[0] != 0.0 || a[1] != 0.0)) {
    throw ConfigError(std::string("model: drift vector a must be zero for ") + std::string(to_string(kind)));
  }
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::qg: return "QG";
    case ModelKind::cd: return "CD";
    case ModelKind::cd2: return "CD2";
    case ModelKind::fr: return "FR";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "QG") return ModelKind::qg;
  if (up == "CD") return ModelKind::cd;
  if (up == "CD2") return ModelKind::cd2;
  if (up == "FR") return ModelKind::fr;
  throw ConfigError("unknown model kind '" + std::string(name) + "' (expected QG, CD, CD2 or FR)");
}

}  // namespace driftlab
