#pragma once

// Global root bracketing with adaptive mesh refinement.
//
// A FIFO worklist of subintervals is processed in order. A bracketing
// subinterval is bisected down to an adaptive tolerance; every discarded half
// that is wider than its halving threshold goes back on the worklist. A
// non-bracketing subinterval is checked for a near-zero midpoint (even-multiple
// roots) and otherwise halved while it is wider than its halving threshold
//
//     HT = C * min(|f(x_L)|, |f(x_R)|) / (x_R - x_L)^n
//
// so the mesh is dense where |f| is small and coarse elsewhere.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "amrroot/core.hpp"

namespace amrroot {

double halving_threshold(const Subinterval& sub, double C, double n_exponent);

/// min(eps * L, eps_m)
double adaptive_tolerance(double bracket_width, double eps, double eps_m);

/// Strict sign change; an exact zero at an endpoint does not bracket.
bool is_bracketing(const Subinterval& sub) noexcept;

enum class NearZeroClass { EvenMultipleRoot, NearZeroRoot, NotRoot };

/// Classification from already-known values. `derivative_value` is empty when
/// no derivative is available.
NearZeroClass classify_near_zero(double fx, std::optional<double> derivative_value, double eps_f,
                                 double eps_d);

/// Evaluates f (and f' only when |f| < eps_f) at x and classifies the point.
NearZeroClass even_root_check(double x, CountedObjective& objective, Derivative* derivative,
                              double eps_f, double eps_d);

/// Pending subintervals in enqueue order; each is handed out exactly once.
class Worklist {
 public:
  void push(const Subinterval& sub) { items_.push_back(sub); }
  bool has_pending() const noexcept { return next_ < items_.size(); }
  Subinterval take() { return items_.at(next_++); }
  std::size_t processed() const noexcept { return next_; }
  std::size_t enqueued() const noexcept { return items_.size(); }
  std::size_t pending() const noexcept { return items_.size() - next_; }

 private:
  std::vector<Subinterval> items_;
  std::size_t next_ = 0;
};

/// What happened to a piece of the search domain. Reported through
/// SolveHooks so callers can audit that [a, b] is fully accounted for.
enum class RegionFate {
  Discarded,      // not bracketing and no wider than its halving threshold (or below the width floor)
  RootEnclosure,  // covered by a recorded root
  Abandoned,      // dropped after a non-finite objective value
};

struct SolveHooks {
  /// `ht` is the threshold the region was tested against (Discarded only).
  std::function<void(double lo, double hi, RegionFate fate, std::optional<double> ht)> on_region;
};

/// Bisects a bracketing subinterval whose midpoint value is already known.
/// Discarded halves wider than their HT are pushed onto `worklist`.
Root bisect_refine(const Subinterval& sub, double f_mid, const SolverConfig& cfg,
                   Worklist& worklist, CountedObjective& objective,
                   const SolveHooks* hooks = nullptr);

/// Convenience overload that evaluates the midpoint itself.
Root bisect_refine(const Subinterval& sub, const SolverConfig& cfg, Worklist& worklist,
                   CountedObjective& objective);

/// All roots of the objective on [a, b]. A thrown BudgetExceeded is turned into
/// a partial report with terminated_by = BudgetExceeded.
SolveReport find_roots(CountedObjective& objective, double a, double b, const SolverConfig& cfg,
                       Derivative* derivative = nullptr, const SolveHooks* hooks = nullptr);

/// Same, owning a fresh counted objective (tracing off).
SolveReport find_roots(const Function& f, double a, double b, const SolverConfig& cfg,
                       std::optional<Function> derivative = std::nullopt);

}  // namespace amrroot
