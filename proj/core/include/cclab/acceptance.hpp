#pragma once

#include <string>
#include <vector>

namespace cclab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  int threads = 0;   // 0 = resolve from CCLAB_THREADS / hardware
  bool quick = false;  // smaller fixtures for smoke runs; full sizes otherwise
};

/// Run the whole verification suite (the backing of `cclab check-all`):
/// energy conservation, rest-point fixedness, period limits, exact-solution
/// residuals, picture round trips, Kelvin invariance, boundary-curvature
/// coherence, the interior-ball convexity sweep, the auxiliary-function
/// identity, the moving-planes fixtures, far-field fits, and scan determinism.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// Render a fixed-width pass/fail table, one line per criterion.
std::string format_acceptance_table(const std::vector<CriterionResult>& results);

}  // namespace cclab
