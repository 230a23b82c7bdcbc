#pragma once

// Domain types shared by every solver: cached subintervals, the counted
// objective, roots and the solve report.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "amrroot/errors.hpp"

namespace amrroot {

using Function = std::function<double(double)>;

inline constexpr double kMachineEps = 2.22e-16;
inline constexpr std::size_t kDefaultMaxEvaluations = 10'000'000;

/// Candidate interval with the objective cached at both endpoints.
/// Halving one costs a single new evaluation (the midpoint).
struct Subinterval {
  double x_left = 0.0;
  double x_right = 0.0;
  double f_left = 0.0;
  double f_right = 0.0;

  double width() const noexcept { return x_right - x_left; }
  double midpoint() const noexcept { return 0.5 * (x_left + x_right); }
  double half_width() const noexcept { return 0.5 * (x_right - x_left); }
};

/// User tunables of the adaptive solver.
struct SolverConfig {
  double C = 0.04;           // halving-threshold scale
  double eps = 1e-2;         // relative part of the bisection tolerance
  double eps_m = 1e-3;       // cap of the bisection tolerance
  double eps_f = kMachineEps;  // |f| below this is treated as zero
  double eps_d = kMachineEps;  // |f'| below this marks an even-multiple root
  double n_exponent = 1.0;   // power of the width in the halving threshold
  std::size_t max_evaluations = kDefaultMaxEvaluations;
  double machine_eps = kMachineEps;
  bool even_detection = true;  // near-zero check on non-bracketing midpoints

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

enum class RootKind { Bracketed, EvenMultiple, NearZero };

std::string_view to_string(RootKind kind) noexcept;
std::optional<RootKind> root_kind_from_string(std::string_view text) noexcept;

struct Root {
  double location = 0.0;
  double error_bound = 0.0;
  RootKind kind = RootKind::Bracketed;

  bool operator==(const Root&) const = default;
};

/// One recorded evaluation. `ht` is the halving threshold of the
/// subinterval whose midpoint this was, when there is one.
struct TracePoint {
  double x = 0.0;
  double fx = 0.0;
  std::optional<double> ht;

  bool operator==(const TracePoint& o) const {
    // NaN values are stored for failed evaluations; compare them bitwise-equal.
    auto same = [](double a, double b) { return a == b || (a != a && b != b); };
    return same(x, o.x) && same(fx, o.fx) && ht.has_value() == o.ht.has_value() &&
           (!ht || same(*ht, *o.ht));
  }
};

enum class ExecutionPolicy { Serial, Parallel };

/// Wraps an objective with exact evaluation counting, an optional trace of
/// every evaluated point, and an optional hard limit on the count.
///
/// A failed evaluation (non-finite result or DomainError) still counts and is
/// traced with fx = NaN before NonFiniteValue is thrown.
class CountedObjective {
 public:
  explicit CountedObjective(Function f, bool tracing = false);

  double operator()(double x) { return evaluate(x, std::nullopt); }
  double evaluate(double x, std::optional<double> ht);

  /// Evaluates every point of `xs` into `out`. The underlying function must be
  /// safe to call concurrently when `policy` is Parallel. Counting and tracing
  /// happen in index order, so the result is independent of the policy.
  void evaluate_batch(std::span<const double> xs, std::span<double> out,
                      ExecutionPolicy policy = ExecutionPolicy::Serial);

  std::size_t evaluation_count() const noexcept { return count_; }
  bool tracing() const noexcept { return tracing_; }
  const std::vector<TracePoint>& trace() const noexcept { return trace_; }

  /// Absolute cap on evaluation_count(); an evaluation past it throws
  /// BudgetExceeded without calling the function.
  void set_limit(std::optional<std::size_t> limit) noexcept { limit_ = limit; }
  std::optional<std::size_t> limit() const noexcept { return limit_; }

  const Function& function() const noexcept { return f_; }

 private:
  Function f_;
  bool tracing_;
  std::size_t count_ = 0;
  std::optional<std::size_t> limit_;
  std::vector<TracePoint> trace_;
};

/// Installs `count() + budget` as the limit of a CountedObjective for the
/// lifetime of the guard, restoring the previous limit afterwards.
class BudgetScope {
 public:
  BudgetScope(CountedObjective& objective, std::size_t budget);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  CountedObjective& objective_;
  std::optional<std::size_t> saved_;
};

/// Counted derivative provider for the even-multiple check.
class Derivative {
 public:
  /// Exact derivative supplied by the caller (for instance a symbolic one).
  static Derivative exact(Function df);
  /// Central differences of the objective, step
  /// h = max(eps^(1/3), 1e-8) * max(1, |x|). Each call spends two
  /// objective evaluations and counts as one derivative evaluation.
  static Derivative central_difference(double machine_eps = kMachineEps);

  double operator()(double x, CountedObjective& objective);
  std::size_t evaluation_count() const noexcept { return count_; }
  bool is_exact() const noexcept { return static_cast<bool>(df_); }

 private:
  Function df_;
  double machine_eps_ = kMachineEps;
  std::size_t count_ = 0;
};

enum class Termination { WorklistExhausted, BudgetExceeded };

std::string_view to_string(Termination t) noexcept;
std::optional<Termination> termination_from_string(std::string_view text) noexcept;

struct SolveReport {
  std::vector<Root> roots;  // ascending by location
  std::size_t evaluations = 0;
  std::size_t derivative_evaluations = 0;
  std::size_t abandoned_subintervals = 0;  // dropped after a non-finite value
  std::optional<std::vector<TracePoint>> trace;
  Termination terminated_by = Termination::WorklistExhausted;

  bool operator==(const SolveReport&) const = default;
};

/// Builds a Subinterval over [a, b], evaluating the endpoints unless their
/// values are supplied.
Subinterval make_subinterval(double a, double b, CountedObjective& objective,
                             std::optional<double> f_a = std::nullopt,
                             std::optional<double> f_b = std::nullopt);

/// Width of the search bound over the smallest distance between two roots.
double closeness_index(double bound_width, double min_root_separation);

/// Sorts by location and merges roots whose enclosures overlap
/// (distance < sum of error bounds), keeping the tighter one.
std::vector<Root> deduplicate_roots(std::vector<Root> roots);

}  // namespace amrroot
