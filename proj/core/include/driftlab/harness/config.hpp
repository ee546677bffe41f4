#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/dynamics/simulation.hpp"

namespace driftlab {

/// [report] section: what simulate writes and how residuals are formed.
struct ReportConfig {
  std::vector<double> qs{1.0, 2.0, std::numeric_limits<double>::infinity()};
  /// Profiles are compared against u(t) at time t + time_shift. Unset = "auto":
  /// tau = \int |x|^2 u0 / (4 M0), which absorbs the isotropic second moment.
  std::optional<double> time_shift = 0.0;
  double fit_lo = 10.0;
  double fit_hi = 100.0;
  bool estimate_ambiguous = true;  ///< CD/CD2: add the fitted flux-excess constant to M1
  bool write_snapshots = true;
  int series_terms = 48;
};

struct RunConfig {
  SimConfig sim;
  ReportConfig report;
};

/// Parses the INI-style config (sections [grid] [model] [time] [initial] [report]).
/// Throws ConfigError with the offending key on any problem.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

/// Writes a config that parse_run_config reads back to the same RunConfig.
void write_run_config(std::ostream& out, const RunConfig& cfg);

/// "1", "2", "inf" <-> exponent.
double parse_q(const std::string& s);
std::string format_q(double q);

}  // namespace driftlab
