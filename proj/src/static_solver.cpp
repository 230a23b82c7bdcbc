#include "amrroot/static_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amrroot/amr_solver.hpp"
#include "amrroot/kernels.hpp"

namespace amrroot {

void StaticConfig::validate() const {
  if (!(ht > 0.0) || !std::isfinite(ht)) throw InvalidArgument("ht must be positive");
  if (!(machine_eps > 0.0)) throw InvalidArgument("machine_eps must be positive");
  if (!(eps_s >= machine_eps) || !std::isfinite(eps_s))
    throw InvalidArgument("eps_s cannot be below machine epsilon");
  if (max_evaluations == 0) throw InvalidArgument("max_evaluations must be positive");
}

ScanResult uniform_scan(CountedObjective& objective, double a, double b, const StaticConfig& cfg) {
  cfg.validate();
  const std::vector<double> nodes = kernels::uniform_nodes(a, b, cfg.ht);
  std::vector<double> values(nodes.size());
  objective.evaluate_batch(nodes, values, cfg.policy);

  const kernels::SignScan scan = cfg.policy == ExecutionPolicy::Parallel
                                     ? kernels::scan_signs_parallel(values)
                                     : kernels::scan_signs_serial(values);
  ScanResult result;
  result.brackets.reserve(scan.bracketing_cells.size());
  for (std::size_t i : scan.bracketing_cells)
    result.brackets.push_back({nodes[i], nodes[i + 1], values[i], values[i + 1]});

  // A zero node hides any second root in the cells next to it; probe their
  // midpoints to recover a strict sign change against the far node.
  for (std::size_t i : scan.exact_zeros) {
    result.exact_zeros.push_back(nodes[i]);
    if (i > 0 && values[i - 1] != 0.0) {
      const double m = 0.5 * (nodes[i - 1] + nodes[i]);
      const double fm = objective(m);
      if (kernels::opposite_signs(values[i - 1], fm)) result.brackets.push_back({nodes[i - 1], m, values[i - 1], fm});
    }
    if (i + 1 < nodes.size() && values[i + 1] != 0.0) {
      const double m = 0.5 * (nodes[i] + nodes[i + 1]);
      const double fm = objective(m);
      if (kernels::opposite_signs(fm, values[i + 1])) result.brackets.push_back({m, nodes[i + 1], fm, values[i + 1]});
    }
  }
  std::sort(result.brackets.begin(), result.brackets.end(),
            [](const Subinterval& l, const Subinterval& r) { return l.x_left < r.x_left; });
  return result;
}

BisectionResult classic_bisection_counted(const Subinterval& sub, const StaticConfig& cfg,
                                          CountedObjective& objective) {
  if (!is_bracketing(sub)) throw InvalidArgument("classic_bisection: subinterval does not bracket");
  Subinterval cur = sub;
  double previous = std::numeric_limits<double>::quiet_NaN();
  BisectionResult out;
  for (;;) {
    const double xm = cur.midpoint();
    if (!(cur.x_left < xm && xm < cur.x_right)) break;
    const double fm = objective(xm);
    ++out.iterations;
    if (fm == 0.0) break;
    if (kernels::opposite_signs(cur.f_left, fm))
      cur = {cur.x_left, xm, cur.f_left, fm};
    else
      cur = {xm, cur.x_right, fm, cur.f_right};
    if (std::isfinite(previous) && std::abs(xm - previous) / std::max(1.0, std::abs(xm)) < cfg.eps_s)
      break;
    previous = xm;
  }
  // If the last midpoint was an exact zero, cur still brackets around it.
  out.root = {cur.midpoint(), cur.half_width(), RootKind::Bracketed};
  return out;
}

Root classic_bisection(const Subinterval& sub, const StaticConfig& cfg, CountedObjective& objective) {
  return classic_bisection_counted(sub, cfg, objective).root;
}

SolveReport static_find_roots(CountedObjective& objective, double a, double b,
                              const StaticConfig& cfg) {
  cfg.validate();
  SolveReport report;
  const std::size_t start_count = objective.evaluation_count();
  const std::size_t start_trace = objective.trace().size();
  std::vector<Root> roots;
  {
    BudgetScope budget(objective, cfg.max_evaluations);
    try {
      const ScanResult scan = uniform_scan(objective, a, b, cfg);
      for (double z : scan.exact_zeros) roots.push_back({z, 0.0, RootKind::NearZero});
      for (const auto& bracket : scan.brackets) {
        try {
          roots.push_back(classic_bisection(bracket, cfg, objective));
        } catch (const NonFiniteValue&) {
          ++report.abandoned_subintervals;
        }
      }
    } catch (const BudgetExceeded&) {
      report.terminated_by = Termination::BudgetExceeded;
    }
  }
  report.roots = deduplicate_roots(std::move(roots));
  report.evaluations = objective.evaluation_count() - start_count;
  if (objective.tracing())
    report.trace.emplace(objective.trace().begin() + static_cast<std::ptrdiff_t>(start_trace),
                         objective.trace().end());
  return report;
}

}  // namespace amrroot
