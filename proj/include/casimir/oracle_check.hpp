// Randomized cross-validation of the production series/recurrence Delta
// against the independent boundary-matrix determinant ratio. Draws
// spectral points and stack geometries, evaluates both paths for every
// polarization and every leading sub-stack, and records the worst
// relative disagreement.
//
// Comparisons are asserted only where |Delta| exceeds `admissible_floor`:
// below it, both algorithms lose all relative precision to the ~1e-16
// absolute noise of their O(1) intermediates and "relative agreement" is
// meaningless. The floor is part of the check's contract, not a retry.
#pragma once

#include <cstdint>
#include <string>

#include "casimir/phys.hpp"

namespace casimir {

struct CrossCheckConfig {
  BoundaryKind kind = BoundaryKind::DielectricCavities;
  int target_points = 1000;        // admissible spectral points required
  std::uint64_t seed = 20260816u;  // deterministic draw sequence
  double admissible_floor = 1e-6;  // assert only where |Delta| exceeds this
  // Fraction (out of 8) of draws forced to the static zeta = 0 branch.
  int static_eighths = 1;
};

struct CrossCheckResult {
  long points_drawn = 0;       // spectral points generated
  long points_admissible = 0;  // points with >= 1 admissible comparison
  long comparisons = 0;        // admissible (pol, depth) comparisons
  double worst_rel = 0.0;
  std::string worst_case;  // human-readable parameters of the worst one
};

CrossCheckResult cross_check_random(const CrossCheckConfig& cfg);

}  // namespace casimir
