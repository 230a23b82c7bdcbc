#include "amrroot/amr_solver.hpp"

#include <algorithm>
#include <cmath>

#include "amrroot/kernels.hpp"

namespace amrroot {

namespace {

void emit(const SolveHooks* hooks, double lo, double hi, RegionFate fate,
          std::optional<double> ht = std::nullopt) {
  if (hooks && hooks->on_region) hooks->on_region(lo, hi, fate, ht);
}

void emit(const SolveHooks* hooks, const Subinterval& s, RegionFate fate,
          std::optional<double> ht = std::nullopt) {
  emit(hooks, s.x_left, s.x_right, fate, ht);
}

// No further halving once the width is down to rounding level.
bool below_width_floor(const Subinterval& s, double machine_eps) noexcept {
  if (s.width() < machine_eps * std::max(1.0, std::abs(s.x_left))) return true;
  const double m = s.midpoint();
  return !(s.x_left < m && m < s.x_right);
}

// A half that leaves the bisection loop is kept for later only
// if it is wider than its own halving threshold.
void offer(const Subinterval& s, const SolverConfig& cfg, Worklist& worklist,
           const SolveHooks* hooks) {
  if (is_bracketing(s)) {
    worklist.push(s);
    return;
  }
  const double ht = halving_threshold(s, cfg.C, cfg.n_exponent);
  if (!below_width_floor(s, cfg.machine_eps) && s.width() > ht)
    worklist.push(s);
  else
    emit(hooks, s, RegionFate::Discarded, ht);
}

// The bisection midpoint is numerically zero while the bracket is still wide.
// If f is clearly nonzero with opposite signs at xm -/+ r, record the root with
// bound r and hand the two sides back to the worklist so further roots in them
// are not lost. Otherwise f is flat here (a multiple root) and the whole
// bracket becomes the enclosure.
Root split_at_zero(const Subinterval& cur, double tol, const SolverConfig& cfg,
                   Worklist& worklist, CountedObjective& objective, const SolveHooks* hooks) {
  const double xm = cur.midpoint();
  const Root whole{xm, cur.half_width(), RootKind::Bracketed};
  const double r = std::min(tol, 0.5 * cur.half_width());
  const double lo = xm - r;
  const double hi = xm + r;
  if (!(cur.x_left < lo && lo < xm && xm < hi && hi < cur.x_right)) {
    emit(hooks, cur, RegionFate::RootEnclosure);
    return whole;
  }
  double f_lo, f_hi;
  try {
    f_lo = objective(lo);
    f_hi = objective(hi);
  } catch (const NonFiniteValue&) {
    emit(hooks, cur, RegionFate::RootEnclosure);
    return whole;
  }
  if (!(std::abs(f_lo) > cfg.eps_f && std::abs(f_hi) > cfg.eps_f && kernels::opposite_signs(f_lo, f_hi))) {
    emit(hooks, cur, RegionFate::RootEnclosure);
    return whole;
  }
  offer({cur.x_left, lo, cur.f_left, f_lo}, cfg, worklist, hooks);
  offer({hi, cur.x_right, f_hi, cur.f_right}, cfg, worklist, hooks);
  emit(hooks, lo, hi, RegionFate::RootEnclosure);
  return {xm, r, RootKind::Bracketed};
}

}  // namespace

double halving_threshold(const Subinterval& sub, double C, double n_exponent) {
  const double magnitude = std::min(std::abs(sub.f_left), std::abs(sub.f_right));
  const double width = sub.width();
  const double denom = n_exponent == 1.0 ? width : std::pow(width, n_exponent);
  return C * magnitude / denom;
}

double adaptive_tolerance(double bracket_width, double eps, double eps_m) {
  return std::min(eps * bracket_width, eps_m);
}

bool is_bracketing(const Subinterval& sub) noexcept {
  return kernels::opposite_signs(sub.f_left, sub.f_right);
}

NearZeroClass classify_near_zero(double fx, std::optional<double> derivative_value, double eps_f,
                                 double eps_d) {
  if (!std::isfinite(fx)) throw NonFiniteValue(fx);
  if (!(std::abs(fx) < eps_f)) return NearZeroClass::NotRoot;
  if (!derivative_value) return NearZeroClass::NearZeroRoot;
  if (!std::isfinite(*derivative_value)) throw NonFiniteValue(*derivative_value);
  return std::abs(*derivative_value) < eps_d ? NearZeroClass::EvenMultipleRoot
                                             : NearZeroClass::NearZeroRoot;
}

NearZeroClass even_root_check(double x, CountedObjective& objective, Derivative* derivative,
                              double eps_f, double eps_d) {
  const double fx = objective(x);
  std::optional<double> dfx;
  if (derivative && std::abs(fx) < eps_f) dfx = (*derivative)(x, objective);
  return classify_near_zero(fx, dfx, eps_f, eps_d);
}

Root bisect_refine(const Subinterval& sub, double f_mid, const SolverConfig& cfg,
                   Worklist& worklist, CountedObjective& objective, const SolveHooks* hooks) {
  if (!is_bracketing(sub)) throw InvalidArgument("bisect_refine: subinterval does not bracket");
  const double tol = adaptive_tolerance(sub.width(), cfg.eps, cfg.eps_m);
  Subinterval cur = sub;
  double fm = f_mid;
  while (cur.width() > tol && !below_width_floor(cur, cfg.machine_eps)) {
    if (std::abs(fm) <= cfg.eps_f) return split_at_zero(cur, tol, cfg, worklist, objective, hooks);
    const double xm = cur.midpoint();
    const Subinterval left{cur.x_left, xm, cur.f_left, fm};
    const Subinterval right{xm, cur.x_right, fm, cur.f_right};
    if (is_bracketing(left)) {
      offer(right, cfg, worklist, hooks);
      cur = left;
    } else {
      offer(left, cfg, worklist, hooks);
      cur = right;
    }
    try {
      fm = objective(cur.midpoint());
    } catch (const NonFiniteValue&) {
      emit(hooks, cur, RegionFate::Abandoned);
      throw;
    }
  }
  emit(hooks, cur, RegionFate::RootEnclosure);
  return {cur.midpoint(), cur.half_width(), RootKind::Bracketed};
}

Root bisect_refine(const Subinterval& sub, const SolverConfig& cfg, Worklist& worklist,
                   CountedObjective& objective) {
  cfg.validate();
  if (!is_bracketing(sub)) throw InvalidArgument("bisect_refine: subinterval does not bracket");
  BudgetScope budget(objective, cfg.max_evaluations);
  return bisect_refine(sub, objective(sub.midpoint()), cfg, worklist, objective, nullptr);
}

SolveReport find_roots(CountedObjective& objective, double a, double b, const SolverConfig& cfg,
                       Derivative* derivative, const SolveHooks* hooks) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw InvalidArgument("find_roots: need finite a < b");

  SolveReport report;
  const std::size_t start_count = objective.evaluation_count();
  const std::size_t start_trace = objective.trace().size();
  const std::size_t start_deriv = derivative ? derivative->evaluation_count() : 0;
  std::vector<Root> roots;
  {
    BudgetScope budget(objective, cfg.max_evaluations);
    Worklist worklist;
    try {
      worklist.push(make_subinterval(a, b, objective));
      while (worklist.has_pending()) {
        const Subinterval sub = worklist.take();
        const double ht = halving_threshold(sub, cfg.C, cfg.n_exponent);
        const double xm = sub.midpoint();
        double fm;
        try {
          fm = objective.evaluate(xm, ht);
        } catch (const NonFiniteValue&) {
          ++report.abandoned_subintervals;
          emit(hooks, sub, RegionFate::Abandoned);
          continue;
        }

        if (is_bracketing(sub)) {
          try {
            roots.push_back(bisect_refine(sub, fm, cfg, worklist, objective, hooks));
          } catch (const NonFiniteValue&) {
            ++report.abandoned_subintervals;
          }
          continue;
        }

        if (cfg.even_detection && std::abs(fm) < cfg.eps_f) {
          std::optional<double> dfm;
          NearZeroClass cls;
          try {
            if (derivative) dfm = (*derivative)(xm, objective);
            cls = classify_near_zero(fm, dfm, cfg.eps_f, cfg.eps_d);
          } catch (const NonFiniteValue&) {
            ++report.abandoned_subintervals;
            emit(hooks, sub, RegionFate::Abandoned);
            continue;
          }
          // Without a derivative a near-zero midpoint is an even-multiple
          // candidate. With one, a nonzero slope sends the subinterval on to
          // the halving test so the touch point is approached further; only
          // an exact zero is kept as a plain near-zero root.
          std::optional<RootKind> kind;
          if (cls == NearZeroClass::EvenMultipleRoot || !derivative)
            kind = RootKind::EvenMultiple;
          else if (fm == 0.0)
            kind = RootKind::NearZero;
          if (kind) {
            roots.push_back({xm, sub.half_width(), *kind});
            emit(hooks, sub, RegionFate::RootEnclosure);
            continue;
          }
        }

        if (below_width_floor(sub, cfg.machine_eps) || !(sub.width() > ht)) {
          emit(hooks, sub, RegionFate::Discarded, ht);
          continue;
        }
        worklist.push({sub.x_left, xm, sub.f_left, fm});
        worklist.push({xm, sub.x_right, fm, sub.f_right});
      }
    } catch (const BudgetExceeded&) {
      report.terminated_by = Termination::BudgetExceeded;
    }
  }

  report.roots = deduplicate_roots(std::move(roots));
  report.evaluations = objective.evaluation_count() - start_count;
  if (derivative) report.derivative_evaluations = derivative->evaluation_count() - start_deriv;
  if (objective.tracing())
    report.trace.emplace(objective.trace().begin() + static_cast<std::ptrdiff_t>(start_trace),
                         objective.trace().end());
  return report;
}

SolveReport find_roots(const Function& f, double a, double b, const SolverConfig& cfg,
                       std::optional<Function> derivative) {
  CountedObjective objective(f);
  if (derivative) {
    Derivative d = Derivative::exact(*derivative);
    return find_roots(objective, a, b, cfg, &d);
  }
  return find_roots(objective, a, b, cfg);
}

}  // namespace amrroot
