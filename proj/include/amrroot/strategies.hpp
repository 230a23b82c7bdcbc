#pragma once

// Two-phase search for functions mixing odd-multiple, even-multiple and simple
// roots. Phase 1 runs with a large width exponent (n > 1) and no near-zero
// detection, which finds odd-multiple roots cheaply. Neighbourhoods of those
// roots are then cut out and phase 2 runs with n = 1 on what is left.

#include <optional>
#include <utility>
#include <vector>

#include "amrroot/amr_solver.hpp"
#include "amrroot/core.hpp"

namespace amrroot {

struct ExclusionRegion {
  double center = 0.0;
  double radius = 0.0;
};

struct TwoPhaseConfig {
  SolverConfig phase1{.n_exponent = 3.0, .even_detection = false};
  SolverConfig phase2{};
  /// radius = exclusion_factor * max(error_bound, phase1.eps_m)
  double exclusion_factor = 10.0;
  /// Fixed radius instead of the factor rule (must exceed each root's error bound).
  std::optional<double> exclusion_radius;

  void validate() const;
};

struct TwoPhaseReport {
  SolveReport report;  // merged
  SolveReport phase1;
  std::vector<ExclusionRegion> regions;
  std::vector<std::pair<double, double>> phase2_domains;
  std::vector<SolveReport> phase2;
  std::optional<int> budget_exceeded_in_phase;  // 1 or 2
};

/// Maximal closed pieces of [a, b] that avoid the interior of every region,
/// sorted and disjoint. Zero-width pieces are dropped.
std::vector<std::pair<double, double>> exclusion_complement(double a, double b,
                                                            const std::vector<ExclusionRegion>& regions);

TwoPhaseReport two_phase_solve(CountedObjective& objective, double a, double b,
                               const TwoPhaseConfig& cfg, Derivative* derivative = nullptr);

}  // namespace amrroot
