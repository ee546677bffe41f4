// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <iostream>

#include "driftlab/harness/acceptance.hpp"

int main(int argc, char** argv) {
  driftlab::AcceptanceOptions opts;
  if (argc > 1) opts.output_dir = argv[1];
  const auto results = driftlab::run_acceptance(opts, std::cerr);
  driftlab::print_criteria(std::cout, results);
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}
