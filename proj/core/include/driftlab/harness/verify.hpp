#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace driftlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured error or quantity
  double tolerance = 0.0;
  std::string detail;
};

/// Named operator / identity suites: subordination, riesz, skew, ladder,
/// series, oracle, flux. "all" runs every suite.
std::vector<std::string> verify_suite_names();
std::vector<CheckResult> run_verify_suite(const std::string& name);

/// Building blocks shared with the acceptance suite.
std::vector<CheckResult> riesz_oracle_checks(std::size_t n, double length);
std::vector<CheckResult> scaling_checks();
std::vector<CheckResult> parity_checks();
std::vector<CheckResult> oracle_checks(bool convection_and_fr, bool qg);

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace driftlab
