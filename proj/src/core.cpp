#include "amrroot/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amrroot/kernels.hpp"

namespace amrroot {

NonFiniteValue::NonFiniteValue(double x)
    : std::runtime_error("objective is not finite at x = " + std::to_string(x)), x_(x) {}

BudgetExceeded::BudgetExceeded(std::size_t limit)
    : std::runtime_error("evaluation budget of " + std::to_string(limit) + " exceeded"),
      limit_(limit) {}

void SolverConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(machine_eps)) throw InvalidArgument("machine_eps must be positive");
  if (!positive(C)) throw InvalidArgument("C must be positive");
  if (!positive(eps)) throw InvalidArgument("eps must be positive");
  if (!positive(eps_m)) throw InvalidArgument("eps_m must be positive");
  if (!(eps_f >= machine_eps) || !std::isfinite(eps_f))
    throw InvalidArgument("eps_f cannot be below machine epsilon");
  if (!(eps_d >= 0.0) || !std::isfinite(eps_d)) throw InvalidArgument("eps_d must be nonnegative");
  if (!(n_exponent >= 1.0) || !std::isfinite(n_exponent))
    throw InvalidArgument("n_exponent must be >= 1");
  if (max_evaluations == 0) throw InvalidArgument("max_evaluations must be positive");
}

std::string_view to_string(RootKind kind) noexcept {
  switch (kind) {
    case RootKind::Bracketed: return "bracketed";
    case RootKind::EvenMultiple: return "even_multiple";
    case RootKind::NearZero: return "near_zero";
  }
  return "unknown";
}

std::optional<RootKind> root_kind_from_string(std::string_view text) noexcept {
  for (auto k : {RootKind::Bracketed, RootKind::EvenMultiple, RootKind::NearZero})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

std::string_view to_string(Termination t) noexcept {
  return t == Termination::BudgetExceeded ? "budget_exceeded" : "worklist_exhausted";
}

std::optional<Termination> termination_from_string(std::string_view text) noexcept {
  if (text == "budget_exceeded") return Termination::BudgetExceeded;
  if (text == "worklist_exhausted") return Termination::WorklistExhausted;
  return std::nullopt;
}

// CountedObjective

CountedObjective::CountedObjective(Function f, bool tracing) : f_(std::move(f)), tracing_(tracing) {
  if (!f_) throw InvalidArgument("CountedObjective needs a callable");
}

double CountedObjective::evaluate(double x, std::optional<double> ht) {
  if (limit_ && count_ >= *limit_) throw BudgetExceeded(*limit_);
  double value;
  try {
    value = f_(x);
  } catch (const DomainError&) {
    value = std::numeric_limits<double>::quiet_NaN();
  }
  ++count_;
  if (!std::isfinite(value)) value = std::numeric_limits<double>::quiet_NaN();
  if (tracing_) trace_.push_back({x, value, ht});
  if (std::isnan(value)) throw NonFiniteValue(x);
  return value;
}

void CountedObjective::evaluate_batch(std::span<const double> xs, std::span<double> out,
                                      ExecutionPolicy policy) {
  if (out.size() < xs.size()) throw InvalidArgument("evaluate_batch: output too small");
  if (limit_ && count_ + xs.size() > *limit_) throw BudgetExceeded(*limit_);
  if (policy == ExecutionPolicy::Parallel)
    kernels::evaluate_parallel(f_, xs, out);
  else
    kernels::evaluate_serial(f_, xs, out);
  count_ += xs.size();
  if (tracing_) {
    trace_.reserve(trace_.size() + xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) trace_.push_back({xs[i], out[i], std::nullopt});
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::isnan(out[i])) throw NonFiniteValue(xs[i]);
}

BudgetScope::BudgetScope(CountedObjective& objective, std::size_t budget)
    : objective_(objective), saved_(objective.limit()) {
  std::size_t limit = objective.evaluation_count() + budget;
  if (saved_) limit = std::min(limit, *saved_);
  objective_.set_limit(limit);
}

BudgetScope::~BudgetScope() { objective_.set_limit(saved_); }

// Derivative

Derivative Derivative::exact(Function df) {
  if (!df) throw InvalidArgument("Derivative::exact needs a callable");
  Derivative d;
  d.df_ = std::move(df);
  return d;
}

Derivative Derivative::central_difference(double machine_eps) {
  Derivative d;
  d.machine_eps_ = machine_eps;
  return d;
}

double Derivative::operator()(double x, CountedObjective& objective) {
  ++count_;
  if (df_) {
    double v;
    try {
      v = df_(x);
    } catch (const DomainError&) {
      throw NonFiniteValue(x);
    }
    if (!std::isfinite(v)) throw NonFiniteValue(x);
    return v;
  }
  const double h = std::max(std::cbrt(machine_eps_), 1e-8) * std::max(1.0, std::abs(x));
  const double up = objective(x + h);
  const double down = objective(x - h);
  return (up - down) / (2.0 * h);
}

// Operations

Subinterval make_subinterval(double a, double b, CountedObjective& objective,
                             std::optional<double> f_a, std::optional<double> f_b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw InvalidArgument("subinterval needs finite endpoints with a < b");
  if (f_a && !std::isfinite(*f_a)) throw NonFiniteValue(a);
  if (f_b && !std::isfinite(*f_b)) throw NonFiniteValue(b);
  Subinterval s;
  s.x_left = a;
  s.x_right = b;
  s.f_left = f_a ? *f_a : objective(a);
  s.f_right = f_b ? *f_b : objective(b);
  return s;
}

double closeness_index(double bound_width, double min_root_separation) {
  if (min_root_separation == 0.0) throw DivisionDegenerate("closeness_index: zero root separation");
  if (!(bound_width > 0.0) || !(min_root_separation > 0.0))
    throw InvalidArgument("closeness_index: arguments must be positive");
  return bound_width / min_root_separation;
}

std::vector<Root> deduplicate_roots(std::vector<Root> roots) {
  std::sort(roots.begin(), roots.end(),
            [](const Root& l, const Root& r) { return l.location < r.location; });
  std::vector<Root> out;
  out.reserve(roots.size());
  for (const auto& r : roots) {
    if (!out.empty()) {
      Root& last = out.back();
      if (r.location - last.location < r.error_bound + last.error_bound ||
          r.location == last.location) {
        if (r.error_bound < last.error_bound) last = r;
        continue;
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace amrroot
