#include "amrroot/strategies.hpp"

#include <algorithm>
#include <cmath>

namespace amrroot {

void TwoPhaseConfig::validate() const {
  phase1.validate();
  phase2.validate();
  if (!(phase1.n_exponent > 1.0)) throw InvalidArgument("phase 1 needs n_exponent > 1");
  if (phase2.n_exponent != 1.0) throw InvalidArgument("phase 2 needs n_exponent = 1");
  if (!(exclusion_factor > 1.0) || !std::isfinite(exclusion_factor))
    throw InvalidArgument("exclusion_factor must exceed 1");
  if (exclusion_radius && !(*exclusion_radius > 0.0))
    throw InvalidArgument("exclusion_radius must be positive");
}

std::vector<std::pair<double, double>> exclusion_complement(
    double a, double b, const std::vector<ExclusionRegion>& regions) {
  if (!(a < b)) throw InvalidArgument("exclusion_complement: need a < b");
  std::vector<std::pair<double, double>> cut;
  for (const auto& r : regions) {
    const double lo = std::max(a, r.center - r.radius);
    const double hi = std::min(b, r.center + r.radius);
    if (lo < hi) cut.emplace_back(lo, hi);
  }
  std::sort(cut.begin(), cut.end());

  std::vector<std::pair<double, double>> pieces;
  double cursor = a;
  for (const auto& [lo, hi] : cut) {
    if (lo > cursor) pieces.emplace_back(cursor, lo);
    cursor = std::max(cursor, hi);
  }
  if (cursor < b) pieces.emplace_back(cursor, b);
  return pieces;
}

TwoPhaseReport two_phase_solve(CountedObjective& objective, double a, double b,
                               const TwoPhaseConfig& cfg, Derivative* derivative) {
  cfg.validate();
  TwoPhaseReport out;

  SolverConfig first = cfg.phase1;
  first.even_detection = false;
  out.phase1 = find_roots(objective, a, b, first, nullptr);
  if (out.phase1.terminated_by == Termination::BudgetExceeded) out.budget_exceeded_in_phase = 1;

  std::vector<Root> roots = out.phase1.roots;
  std::size_t evaluations = out.phase1.evaluations;
  std::size_t derivative_evaluations = 0;
  std::size_t abandoned = out.phase1.abandoned_subintervals;

  if (!out.budget_exceeded_in_phase) {
    for (const auto& r : out.phase1.roots) {
      double radius = cfg.exclusion_radius
                          ? *cfg.exclusion_radius
                          : cfg.exclusion_factor * std::max(r.error_bound, cfg.phase1.eps_m);
      if (!(radius > r.error_bound)) radius = cfg.exclusion_factor * r.error_bound;
      out.regions.push_back({r.location, radius});
    }
    out.phase2_domains = exclusion_complement(a, b, out.regions);

    // The phase-2 budget is shared by all pieces.
    std::size_t remaining = cfg.phase2.max_evaluations;
    for (const auto& [lo, hi] : out.phase2_domains) {
      SolverConfig second = cfg.phase2;
      second.max_evaluations = std::max<std::size_t>(remaining, 1);
      SolveReport piece = find_roots(objective, lo, hi, second, derivative);
      remaining -= std::min(remaining, piece.evaluations);
      evaluations += piece.evaluations;
      derivative_evaluations += piece.derivative_evaluations;
      abandoned += piece.abandoned_subintervals;
      roots.insert(roots.end(), piece.roots.begin(), piece.roots.end());
      const bool exceeded = piece.terminated_by == Termination::BudgetExceeded;
      out.phase2.push_back(std::move(piece));
      if (exceeded) {
        out.budget_exceeded_in_phase = 2;
        break;
      }
    }
  }

  out.report.roots = deduplicate_roots(std::move(roots));
  out.report.evaluations = evaluations;
  out.report.derivative_evaluations = derivative_evaluations;
  out.report.abandoned_subintervals = abandoned;
  out.report.terminated_by =
      out.budget_exceeded_in_phase ? Termination::BudgetExceeded : Termination::WorklistExhausted;
  if (objective.tracing()) {
    std::vector<TracePoint> trace;
    if (out.phase1.trace) trace = *out.phase1.trace;
    for (const auto& p : out.phase2)
      if (p.trace) trace.insert(trace.end(), p.trace->begin(), p.trace->end());
    out.report.trace = std::move(trace);
  }
  return out;
}

}  // namespace amrroot
