#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "driftlab/harness/experiment.hpp"
#include "driftlab/harness/verify.hpp"

namespace driftlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<CheckResult> checks;
};

struct AcceptanceOptions {
  /// Grid for the long simulations (criteria 3, 5, 6, 8).
  std::size_t n = 512;
  double length = 192.0;
  double t_end = 100.0;
  /// Riesz oracle grid (criterion 2).
  std::size_t riesz_n = 2048;
  double riesz_length = 512.0;
  /// Directory for per-experiment CSVs; empty = do not write.
  std::string output_dir;
};

/// The four long experiments (QG, CD, CD2, FR) with their initial data.
std::vector<ExperimentPlan> acceptance_plans(const AcceptanceOptions& opts);

/// Runs criteria 1-8. Progress goes to `log`; one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

/// "PASS <id> <title>" / "FAIL ..." lines followed by failing check details.
void print_criteria(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace driftlab
