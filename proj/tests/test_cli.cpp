#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "amrroot/cli.hpp"
#include "amrroot/report_json.hpp"

using namespace amrroot;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "amrroot");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("one root of a line") {
  const Result r = run({"--function", "x-0.5", "--domain", "0", "1", "--mode", "amr"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 root\n") != std::string::npos);
  CHECK(r.out.find("0.5") != std::string::npos);
  CHECK(r.out.find("[bracketed]") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("presets fill the function and domain") {
  const Result r = run({"--preset", "close-pair", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("roots").size() == 5);
  CHECK(j.at("terminated_by") == "worklist_exhausted");
  CHECK(j.at("evaluations").get<int>() > 0);
  CHECK(j.at("derivative_evaluations") == 0);
  CHECK(j.at("roots")[0].at("kind") == "bracketed");
}

TEST_CASE("JSON reports round-trip") {
  const Result r = run({"--preset", "double-roots", "-C", "4", "--derivative", "--json"});
  REQUIRE(r.code == 0);
  const SolveReport rep = report_from_json_string(r.out);
  CHECK(rep.roots.size() == 2);
  CHECK(rep.derivative_evaluations > 0);
  CHECK(report_to_json_string(rep) + "\n" == r.out);

  SolveReport manual;
  manual.roots = {{0.1, 1e-300, RootKind::NearZero}, {1.0 / 3.0, 0.0, RootKind::EvenMultiple}};
  manual.evaluations = 7;
  manual.trace = std::vector<TracePoint>{{0.1, std::nan(""), std::nullopt}, {0.2, -3.5, 0.25}};
  manual.terminated_by = Termination::BudgetExceeded;
  CHECK(report_from_json_string(report_to_json_string(manual)) == manual);
}

TEST_CASE("identical runs give byte-identical output") {
  for (const char* mode : {"amr", "static", "two-phase"}) {
    const std::vector<std::string> args{"--function", "(x-1)*(x-2.5)*(x-3)", "--domain", "0", "4",
                                        "--mode",     mode,                  "--ht",     "1e-3", "--json"};
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("static and two-phase table output") {
  const Result s = run({"--preset", "close-pair", "--mode", "static", "--ht", "1e-4"});
  CHECK(s.code == 0);
  CHECK(s.out.find("function evaluations") != std::string::npos);

  const Result t = run({"--preset", "mixed-multiplicity", "--mode", "two-phase", "--p1-n", "5", "--p1-C", "0.1", "--p2-C",
                        "0.01", "--eps", "1e-5", "--eps-m", "1e-5", "--derivative"});
  CHECK(t.code == 0);
  CHECK(t.out.find("5 roots") != std::string::npos);
  CHECK(t.out.find("[even_multiple]") != std::string::npos);
  CHECK(t.out.find("phase 2 domains: [0, 0.4001") != std::string::npos);
}

TEST_CASE("trace CSV") {
  const auto path = std::filesystem::temp_directory_path() / "amrroot_trace_test.csv";
  const Result r = run({"--function", "x-0.3", "--domain", "0", "1", "--trace", path.string(), "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(!j.contains("trace"));
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "idx,x,fx,ht");
  std::size_t rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  CHECK(rows == j.at("evaluations").get<std::size_t>());
  CHECK(first == "0,0,-0.3,");
  std::filesystem::remove(path);

  std::ostringstream csv;
  write_trace_csv(csv, {{0.5, 1.25, 0.125}, {1, std::nan(""), std::nullopt}});
  CHECK(csv.str() == "idx,x,fx,ht\n0,0.5,1.25,0.125\n1,1,nan,\n");
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({"--function", "2x", "--domain", "0", "1"}).code == cli::kExitUsage);
  const Result parse_error = run({"--function", "2x", "--domain", "0", "1"});
  CHECK(parse_error.err.find("offset 1") != std::string::npos);
  CHECK(run({"--domain", "0", "1"}).code == cli::kExitUsage);
  CHECK(run({"--function", "x"}).code == cli::kExitUsage);
  CHECK(run({"--function", "x", "--domain", "1", "0"}).code == cli::kExitUsage);
  CHECK(run({"--function", "x", "--domain", "0", "1", "--mode", "fast"}).code == cli::kExitUsage);
  CHECK(run({"--function", "x", "--domain", "0", "1", "--eps-f", "1e-20"}).code == cli::kExitUsage);
  CHECK(run({"--preset", "nope"}).code == cli::kExitUsage);
  CHECK(run({"--function", "2^x", "--domain", "0", "1", "--derivative"}).code == cli::kExitUsage);
  CHECK(run({"--function", "ln(x)", "--domain", "-1", "1"}).code == cli::kExitUsage);
  CHECK(run({"--preset", "close-pair", "--bogus"}).code == cli::kExitUsage);
}

TEST_CASE("budget exhaustion exits with status 3 and still reports") {
  const Result r = run({"--preset", "close-pair", "--max-evals", "30", "--json"});
  CHECK(r.code == cli::kExitBudget);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("terminated_by") == "budget_exceeded");
  CHECK(j.at("evaluations") == 30);
  CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("help") {
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--function") != std::string::npos);
  CHECK(r.out.find("--exclusion-factor") != std::string::npos);
}

TEST_CASE("format_root matches digits to the bound") {
  CHECK(cli::format_root({9.3000234, 3.1e-4, RootKind::Bracketed}) == "9.30002 ± 3.1e-04 [bracketed]");
  CHECK(cli::format_root({0.5, 0.0, RootKind::NearZero}) == "0.5 ± 0.0e+00 [near_zero]");
}
