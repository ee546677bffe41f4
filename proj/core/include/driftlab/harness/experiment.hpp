#pragma once

#include <string>
#include <vector>

#include "driftlab/dynamics/simulation.hpp"
#include "driftlab/harness/config.hpp"
#include "driftlab/harness/csv.hpp"
#include "driftlab/harness/fit.hpp"
#include "driftlab/profiles/expansion.hpp"

namespace driftlab {

/// A residual level: the profile terms subtracted from u(t).
struct LevelSpec {
  std::string name;
  bool subtract_nothing = false;  ///< "raw": norms of u itself
  StackFlags flags;
};

/// Levels evaluated for a model: raw, 0 (M0 G), 1 (full stack), and the
/// single-term ablations 1-nolog (CD/CD2) and 1-noj1 (CD/CD2/FR).
std::vector<LevelSpec> default_levels(ModelKind kind);

struct ExperimentPlan {
  std::string name;
  RunConfig config;
  std::vector<LevelSpec> levels;
};

/// Builds the plan for a config with the model's default levels.
ExperimentPlan make_plan(std::string name, RunConfig config);

/// Flux-excess constant A = \int_0^inf (a.\int f[u] dy / |a|^2 - c / (8 pi (1+s))) ds
/// of the convection models, c the flux mass. Trapezoid over diagnostics rows
/// plus a fitted power-law tail C s^{-p}; p falls back to 3/2 if the fit is
/// not decaying faster than 1/s.
struct AmbiguousEstimate {
  double value = 0.0;
  double quadrature = 0.0;   ///< trapezoid part up to the last row
  double tail = 0.0;         ///< extrapolated part beyond it
  double tail_exponent = 1.5;
  bool fitted_exponent = false;
};
AmbiguousEstimate estimate_ambiguous(const std::vector<DiagnosticsRow>& rows, const ModelSpec& model, double m0);

/// Moments used by the profiles: M0 and M1 from u0, M1 corrected along a by the
/// ambiguous constant when requested.
struct ProfileMoments {
  double m0 = 0.0;
  Vec2 m1{0.0, 0.0};
  double time_shift = 0.0;
  AmbiguousEstimate ambiguous;
};
ProfileMoments profile_moments(const RunResult& run, const RunConfig& config);

/// Resolves the configured shift ("auto" -> \int |x|^2 u0 / (4 M0)).
double resolve_time_shift(const Field& u0, const ReportConfig& report);

/// Per-snapshot, per-q, per-level norms of u(t) - stack(t + shift).
std::vector<ResidualRow> residual_norms(const std::vector<Snapshot>& snapshots, const ExperimentPlan& plan,
                                        const ProfileMoments& pm);

/// Fits every (level, q) series restricted to [lo, hi].
std::vector<FitResult> fit_rows(const std::vector<ResidualRow>& rows, double lo, double hi);

/// Selects rows of one level and q.
std::vector<ResidualRow> select_rows(const std::vector<ResidualRow>& rows, const std::string& level, double q);

}  // namespace driftlab
