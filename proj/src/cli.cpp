#include "amrroot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "amrroot/amr_solver.hpp"
#include "amrroot/expr.hpp"
#include "amrroot/presets.hpp"
#include "amrroot/report_json.hpp"

namespace amrroot::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void print_table(const SolveReport& report, std::ostream& out) {
  out << report.roots.size() << (report.roots.size() == 1 ? " root\n" : " roots\n");
  for (const auto& r : report.roots) out << "  " << format_root(r) << '\n';
  out << "N = " << report.evaluations << " function evaluations\n";
  out << "derivative evaluations = " << report.derivative_evaluations << '\n';
  if (report.abandoned_subintervals > 0)
    out << "abandoned subintervals = " << report.abandoned_subintervals << '\n';
  out << "terminated by: " << to_string(report.terminated_by) << '\n';
}

RunSpec parse_args(const std::vector<std::string>& args) {
  CLI::App app{"All real roots of f(x) on [a, b] by global root bracketing with adaptive mesh refinement",
               "amrroot"};
  RunSpec spec;
  std::string function_text;
  std::string preset;
  std::vector<double> domain;
  std::string mode = "amr";
  SolverConfig base;
  double p1_C = 0, p1_eps = 0, p1_eps_m = 0, p1_n = 3.0;
  double p2_C = 0, p2_eps = 0, p2_eps_m = 0;
  double exclusion_factor = 10.0;
  double exclusion_radius = 0.0;
  bool no_even = false;
  bool serial = false;
  std::string trace_path;

  auto* fn_opt = app.add_option("--function", function_text, "objective in x, e.g. \"(x-1)*(x-2)\"");
  auto* preset_opt = app.add_option("--preset", preset, "close-pair | double-roots | triple-root | mixed-multiplicity");
  fn_opt->excludes(preset_opt);
  app.add_option("--domain", domain, "search bounds A B")->expected(2);
  app.add_option("--mode", mode, "amr | static | two-phase")
      ->check(CLI::IsMember({"amr", "static", "two-phase"}));
  app.add_option("-C", base.C, "halving-threshold scale")->capture_default_str();
  app.add_option("--eps", base.eps, "relative bisection tolerance")->capture_default_str();
  app.add_option("--eps-m", base.eps_m, "bisection tolerance cap")->capture_default_str();
  app.add_option("--eps-f", base.eps_f, "near-zero threshold on |f|")->capture_default_str();
  app.add_option("--eps-d", base.eps_d, "near-zero threshold on |f'|")->capture_default_str();
  app.add_option("-n", base.n_exponent, "width exponent of the halving threshold")->capture_default_str();
  app.add_option("--max-evals", base.max_evaluations, "evaluation budget")->capture_default_str();
  app.add_option("--ht", spec.baseline.ht, "static mode: grid spacing")->capture_default_str();
  app.add_option("--eps-s", spec.baseline.eps_s, "static mode: relative step tolerance")->capture_default_str();
  auto* p1C = app.add_option("--p1-C", p1_C, "two-phase: phase 1 C");
  auto* p1e = app.add_option("--p1-eps", p1_eps, "two-phase: phase 1 eps");
  auto* p1m = app.add_option("--p1-eps-m", p1_eps_m, "two-phase: phase 1 eps_m");
  app.add_option("--p1-n", p1_n, "two-phase: phase 1 width exponent")->capture_default_str();
  auto* p2C = app.add_option("--p2-C", p2_C, "two-phase: phase 2 C");
  auto* p2e = app.add_option("--p2-eps", p2_eps, "two-phase: phase 2 eps");
  auto* p2m = app.add_option("--p2-eps-m", p2_eps_m, "two-phase: phase 2 eps_m");
  app.add_option("--exclusion-factor", exclusion_factor, "two-phase: radius = factor * max(error, eps_m)")
      ->capture_default_str();
  auto* radius_opt = app.add_option("--exclusion-radius", exclusion_radius, "two-phase: fixed exclusion radius");
  app.add_flag("--derivative", spec.use_derivative, "use the symbolic derivative in the even-multiple check");
  app.add_flag("--no-even", no_even, "amr mode: skip the near-zero check on non-bracketing midpoints");
  app.add_flag("--serial", serial, "static mode: serial grid kernels");
  app.add_flag("--json", spec.json, "print the report as JSON");
  auto* trace_opt = app.add_option("--trace", trace_path, "write every evaluation to this CSV file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  }

  if (!preset.empty()) {
    const Preset* p = find_preset(preset);
    if (!p) throw UsageError("unknown preset '" + preset + "'");
    spec.preset = preset;
    spec.function_text = p->function_text;
    spec.a = p->a;
    spec.b = p->b;
    if (p->exclusion_radius) spec.two_phase.exclusion_radius = p->exclusion_radius;
  } else if (!function_text.empty()) {
    spec.function_text = function_text;
  } else {
    throw UsageError("one of --function or --preset is required");
  }
  if (!domain.empty()) {
    spec.a = domain[0];
    spec.b = domain[1];
  } else if (!spec.preset) {
    throw UsageError("--domain A B is required with --function");
  }
  if (!(spec.a < spec.b)) throw UsageError("--domain needs A < B");

  spec.mode = mode == "static" ? Mode::Static : mode == "two-phase" ? Mode::TwoPhase : Mode::Amr;
  spec.amr = base;
  spec.amr.even_detection = !no_even;
  spec.baseline.max_evaluations = base.max_evaluations;
  spec.baseline.policy = serial ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel;

  SolverConfig first = base;
  first.n_exponent = p1_n;
  first.even_detection = false;
  if (*p1C) first.C = p1_C;
  if (*p1e) first.eps = p1_eps;
  if (*p1m) first.eps_m = p1_eps_m;
  SolverConfig second = base;
  second.n_exponent = 1.0;
  second.even_detection = true;
  if (*p2C) second.C = p2_C;
  if (*p2e) second.eps = p2_eps;
  if (*p2m) second.eps_m = p2_eps_m;
  spec.two_phase.phase1 = first;
  spec.two_phase.phase2 = second;
  spec.two_phase.exclusion_factor = exclusion_factor;
  if (*radius_opt) spec.two_phase.exclusion_radius = exclusion_radius;

  if (*trace_opt) spec.trace_path = trace_path;
  return spec;
}

}  // namespace

std::string format_root(const Root& root) {
  std::string loc;
  if (root.error_bound > 0.0 && std::isfinite(root.error_bound)) {
    const int decimals = std::clamp(static_cast<int>(std::ceil(-std::log10(root.error_bound))) + 1, 3, 17);
    loc = fixed(root.location, decimals);
  } else {
    loc = format_double(root.location);
  }
  char bound[32];
  std::snprintf(bound, sizeof bound, "%.1e", root.error_bound);
  return loc + " ± " + bound + " [" + std::string(to_string(root.kind)) + "]";
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  expr::Expr e = expr::Expr::constant(0.0);
  try {
    e = expr::parse(spec.function_text);
  } catch (const expr::ParseError& ex) {
    err << "error: cannot parse function: " << ex.what() << '\n';
    return kExitUsage;
  }
  std::optional<Derivative> derivative;
  if (spec.use_derivative) {
    try {
      const expr::Expr de = expr::differentiate(e);
      derivative = Derivative::exact([de](double x) { return expr::evaluate(de, x); });
    } catch (const expr::Unsupported& ex) {
      err << "error: cannot differentiate: " << ex.what() << '\n';
      return kExitUsage;
    }
  }

  CountedObjective objective([e](double x) { return expr::evaluate(e, x); }, spec.trace_path.has_value());
  Derivative* dptr = derivative ? &*derivative : nullptr;
  SolveReport report;
  std::optional<TwoPhaseReport> phases;
  try {
    switch (spec.mode) {
      case Mode::Amr: report = find_roots(objective, spec.a, spec.b, spec.amr, dptr); break;
      case Mode::Static: report = static_find_roots(objective, spec.a, spec.b, spec.baseline); break;
      case Mode::TwoPhase:
        phases = two_phase_solve(objective, spec.a, spec.b, spec.two_phase, dptr);
        report = phases->report;
        break;
    }
  } catch (const InvalidArgument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const NonFiniteValue& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  if (spec.trace_path) {
    std::ofstream file(*spec.trace_path);
    if (!file) {
      err << "error: cannot write trace file " << *spec.trace_path << '\n';
      return kExitUsage;
    }
    write_trace_csv(file, report.trace ? *report.trace : std::vector<TracePoint>{});
    report.trace.reset();
  }

  if (spec.json) {
    out << report_to_json_string(report) << '\n';
  } else {
    print_table(report, out);
    if (phases) {
      out << "phase 1: " << phases->phase1.evaluations << " evaluations, " << phases->phase1.roots.size()
          << " roots\n";
      std::size_t n2 = 0, d2 = 0;
      for (const auto& p : phases->phase2) {
        n2 += p.evaluations;
        d2 += p.derivative_evaluations;
      }
      out << "phase 2 domains:";
      for (const auto& [lo, hi] : phases->phase2_domains) out << " [" << format_double(lo) << ", " << format_double(hi) << "]";
      out << "\nphase 2: " << n2 << " evaluations, " << d2 << " derivative evaluations\n";
    }
  }
  if (report.terminated_by == Termination::BudgetExceeded) {
    err << "warning: evaluation budget exceeded; roots are partial\n";
    return kExitBudget;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    spec = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(spec, out, err);
}

}  // namespace amrroot::cli
