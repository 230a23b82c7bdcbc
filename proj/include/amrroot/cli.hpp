#pragma once

// Command-line front end. `run_cli` is what the amrroot executable calls; it
// is exposed here so the tests can drive it without spawning a process.
//
// Exit status: 0 success, 2 parse or configuration error, 3 evaluation budget
// exceeded (the roots found so far are still printed).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amrroot/core.hpp"
#include "amrroot/static_solver.hpp"
#include "amrroot/strategies.hpp"

namespace amrroot::cli {

enum class Mode { Amr, Static, TwoPhase };

struct RunSpec {
  std::string function_text;
  double a = 0.0;
  double b = 1.0;
  Mode mode = Mode::Amr;
  SolverConfig amr;
  StaticConfig baseline;
  TwoPhaseConfig two_phase;
  bool use_derivative = false;  // symbolic derivative in the even-multiple check
  bool json = false;
  std::optional<std::string> trace_path;
  std::optional<std::string> preset;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs a validated spec, printing a table or JSON to `out`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `location ± error_bound [kind]`, digits matched to the error bound.
std::string format_root(const Root& root);

}  // namespace amrroot::cli
