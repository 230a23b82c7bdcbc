#pragma once

// Uniform-mesh baseline: sample f on a fixed grid of spacing `ht`, bisect
// every cell that changes sign, stop each bisection on the relative step
// |x_new - x_old| / max(1, |x_new|) < eps_s.

#include <cstddef>
#include <vector>

#include "amrroot/core.hpp"

namespace amrroot {

struct StaticConfig {
  double ht = 1e-5;     // grid spacing
  double eps_s = 1e-6;  // stopping criterion on the relative step
  std::size_t max_evaluations = kDefaultMaxEvaluations;
  double machine_eps = kMachineEps;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;

  void validate() const;
};

struct ScanResult {
  std::vector<Subinterval> brackets;  // consecutive nodes with a strict sign change
  std::vector<double> exact_zeros;    // nodes where f is exactly 0
};

ScanResult uniform_scan(CountedObjective& objective, double a, double b, const StaticConfig& cfg);

/// Plain bisection of a bracketing subinterval. The error bound of the
/// result is the half-width of the final bracket.
Root classic_bisection(const Subinterval& sub, const StaticConfig& cfg, CountedObjective& objective);

/// Same as classic_bisection, also reporting how many midpoints were evaluated.
struct BisectionResult {
  Root root;
  std::size_t iterations = 0;
};
BisectionResult classic_bisection_counted(const Subinterval& sub, const StaticConfig& cfg,
                                          CountedObjective& objective);

/// uniform_scan + classic_bisection on every bracket. Exact zeros at grid
/// nodes are reported as NearZero roots with error bound 0.
SolveReport static_find_roots(CountedObjective& objective, double a, double b,
                              const StaticConfig& cfg);

}  // namespace amrroot
