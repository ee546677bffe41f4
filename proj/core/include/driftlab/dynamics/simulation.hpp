#pragma once

#include <stdexcept>
#include <vector>

#include "driftlab/dynamics/initial_data.hpp"
#include "driftlab/dynamics/model.hpp"
#include "driftlab/spectral/field.hpp"

namespace driftlab {

class TailMassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  std::size_t n = 512;
  double length = 192.0;
  ModelSpec model;
  double t_end = 100.0;
  /// dt <= dt_cfl * dx / max|velocity|.
  double dt_cfl = 0.5;
  /// Accuracy caps: dt <= dt_max and dt <= dt_growth * (1 + t).
  double dt_max = 0.1;
  double dt_growth = 0.02;
  std::vector<double> snapshot_times;
  InitialDataSpec initial;
  /// Abort when the solution's tail mass exceeds this.
  double tail_limit = 1e-6;

  void validate() const;
};

struct DiagnosticsRow {
  double t = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double m0 = 0.0;
  Vec2 m1{0.0, 0.0};
  double tail_mass = 0.0;
  Vec2 flux_integral{0.0, 0.0};
};

struct Snapshot {
  double t = 0.0;
  Field field;
};

struct RunResult {
  Field initial;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRow> diagnostics;  ///< one row per accepted step, t = 0 first
  std::size_t steps = 0;
};

/// Geometrically spaced times lo..hi inclusive.
std::vector<double> geometric_times(double lo, double hi, std::size_t count);

/// Time-marches the configured model. Snapshots land exactly on the requested
/// times by shrinking the step. Throws StabilityError / TailMassError.
RunResult run(const SimConfig& config);

}  // namespace driftlab
