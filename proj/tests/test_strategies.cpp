#include <doctest.h>

#include <cmath>
#include <random>

#include "amrroot/expr.hpp"
#include "amrroot/strategies.hpp"
#include "support/oracles.hpp"

using namespace amrroot;

namespace {

using Pieces = std::vector<std::pair<double, double>>;

double triple_root(double x) { return std::pow(x - 0.5, 3) * (x - 0.50001) * (x - 1); }

double mixed(double x) {
  const double a = x - 0.5, b = x - 0.50001, c = x - 4.2;
  return a * a * a * b * b * b * (x - 4.0) * (x - 4.0001) * c * c;
}

double dmixed(double x) {
  static const expr::Expr d =
      expr::differentiate(expr::parse("(x-0.5)^3*(x-0.50001)^3*(x-4.0)*(x-4.0001)*(x-4.2)^2"));
  return expr::evaluate(d, x);
}

TwoPhaseConfig mixed_config() {
  TwoPhaseConfig cfg;
  cfg.phase1.n_exponent = 5;
  cfg.phase1.C = 0.1;
  cfg.phase1.eps = cfg.phase1.eps_m = 1e-5;
  cfg.phase2.C = 0.01;
  cfg.phase2.eps = cfg.phase2.eps_m = 1e-5;
  cfg.exclusion_radius = 0.0999;
  return cfg;
}

}  // namespace

TEST_CASE("exclusion_complement examples") {
  CHECK(exclusion_complement(0, 4.5, {{0.5, 0.1}}) == Pieces{{0, 0.4}, {0.6, 4.5}});
  CHECK(exclusion_complement(0, 1, {}) == Pieces{{0, 1}});
  CHECK(exclusion_complement(0, 1, {{0.5, 1}}).empty());
  // Overlapping and unsorted regions merge, regions touching a bound clip.
  CHECK(exclusion_complement(0, 10, {{5, 1}, {0, 1}, {5.5, 1}}) == Pieces{{1, 4}, {6.5, 10}});
  CHECK_THROWS_AS(exclusion_complement(1, 1, {}), InvalidArgument);
}

TEST_CASE("exclusion_complement covers the domain without overlap") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> c(-1, 11), r(0.001, 1.5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ExclusionRegion> regions(trial % 7);
    for (auto& reg : regions) reg = {c(rng), r(rng)};
    const Pieces pieces = exclusion_complement(0, 10, regions);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      CHECK(pieces[i].first < pieces[i].second);
      if (i > 0) CHECK(pieces[i - 1].second < pieces[i].first);
      for (const auto& reg : regions) {
        // No piece reaches into the open interior of a region.
        const bool inside = pieces[i].first < reg.center + reg.radius && reg.center - reg.radius < pieces[i].second;
        CHECK(!inside);
      }
    }
    // Every sample point is in a piece or in a region.
    for (double x = 0; x <= 10; x += 0.01) {
      bool covered = false;
      for (const auto& [lo, hi] : pieces) covered = covered || (lo <= x && x <= hi);
      for (const auto& reg : regions) covered = covered || std::abs(x - reg.center) <= reg.radius;
      CHECK(covered);
    }
  }
}

TEST_CASE("TwoPhaseConfig validation") {
  CHECK_NOTHROW(TwoPhaseConfig{}.validate());
  CHECK(TwoPhaseConfig{}.phase1.n_exponent == 3.0);
  CHECK(TwoPhaseConfig{}.exclusion_factor == 10.0);
  TwoPhaseConfig bad;
  bad.phase1.n_exponent = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = TwoPhaseConfig{};
  bad.phase2.n_exponent = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = TwoPhaseConfig{};
  bad.exclusion_factor = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("no roots gives an empty report over the full domain") {
  CountedObjective f([](double x) { return x * x + 1; });
  const TwoPhaseReport rep = two_phase_solve(f, 0, 1, TwoPhaseConfig{});
  CHECK(rep.phase1.roots.empty());
  CHECK(rep.phase2_domains == Pieces{{0, 1}});
  CHECK(rep.report.roots.empty());
  CHECK(rep.report.evaluations == f.evaluation_count());
}

TEST_CASE("odd-multiple roots are found by phase 1 alone") {
  TwoPhaseConfig cfg;
  cfg.phase1.C = 20;
  cfg.phase1.eps = cfg.phase1.eps_m = 1e-5;
  // Wide enough to cut out the flat zone around the triple root.
  cfg.exclusion_radius = 0.01;
  CountedObjective f(triple_root);
  const TwoPhaseReport rep = two_phase_solve(f, 0, 1.5, cfg);
  REQUIRE(rep.phase1.roots.size() == 3);
  REQUIRE(rep.report.roots.size() == 3);
  for (const auto& p : rep.phase2) CHECK(p.roots.empty());
  const std::vector<double> truth{0.5, 0.50001, 1.0};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(rep.report.roots[i].location - truth[i]) < 1e-5);
}

TEST_CASE("mixed multiplicities with two phases") {
  const TwoPhaseConfig cfg = mixed_config();
  CountedObjective f(mixed);
  Derivative d = Derivative::exact(dmixed);
  const TwoPhaseReport rep = two_phase_solve(f, 0, 4.5, cfg, &d);
  CHECK(!rep.budget_exceeded_in_phase);

  SUBCASE("phase 1 reports no even-multiple roots") {
    for (const auto& r : rep.phase1.roots) CHECK(r.kind != RootKind::EvenMultiple);
  }
  SUBCASE("phase 2 does not rediscover excluded roots") {
    for (const auto& piece : rep.phase2)
      for (const auto& r : piece.roots)
        for (const auto& reg : rep.regions) CHECK(std::abs(r.location - reg.center) >= reg.radius);
  }
  SUBCASE("all five roots, the double one marked") {
    const std::vector<double> truth{0.5, 0.50001, 4.0, 4.0001, 4.2};
    REQUIRE(rep.report.roots.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(rep.report.roots[i].location - truth[i]) < 1e-5);
    CHECK(rep.report.roots[4].kind == RootKind::EvenMultiple);
    for (const auto& r : rep.report.roots) CHECK(amrroot::testing::certified(mixed, r, 2.22e-16));
  }
  SUBCASE("counts add up") {
    std::size_t total = rep.phase1.evaluations;
    for (const auto& p : rep.phase2) total += p.evaluations;
    CHECK(rep.report.evaluations == total);
    CHECK(f.evaluation_count() == total);
    CHECK(rep.report.derivative_evaluations == d.evaluation_count());
  }
}

TEST_CASE("budget exhaustion is attributed to its phase") {
  TwoPhaseConfig cfg = mixed_config();
  cfg.phase1.max_evaluations = 20;
  CountedObjective f(mixed);
  const TwoPhaseReport one = two_phase_solve(f, 0, 4.5, cfg);
  CHECK(one.budget_exceeded_in_phase == 1);
  CHECK(one.report.terminated_by == Termination::BudgetExceeded);
  CHECK(one.phase2.empty());

  cfg = mixed_config();
  cfg.phase2.max_evaluations = 50;
  CountedObjective g(mixed);
  const TwoPhaseReport two = two_phase_solve(g, 0, 4.5, cfg);
  CHECK(two.budget_exceeded_in_phase == 2);
  std::size_t phase2 = 0;
  for (const auto& p : two.phase2) phase2 += p.evaluations;
  CHECK(phase2 <= 50);
}
