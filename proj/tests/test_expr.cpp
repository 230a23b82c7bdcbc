#include <doctest.h>

#include <cmath>
#include <random>

#include "amrroot/expr.hpp"
#include "support/random_expr.hpp"

using namespace amrroot;
using namespace amrroot::expr;
using amrroot::testing::random_expr;

namespace {

const char* kClosePair = "(x-0.5)*(x-0.50001)*(x-4)*(x-4.05)*(x-9.3)";
const char* kDoubleRoots = "(x-3)^2*(x-4)^2";

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const Expr e = parse(kClosePair);
  // Left-associated product of five factors.
  int factors = 1;
  const Node* n = &e.node();
  while (const auto* b = std::get_if<Binary>(&n->value)) {
    if (b->op != BinaryOp::Mul) break;
    ++factors;
    n = &b->lhs.node();
  }
  CHECK(factors == 5);

  CHECK(parse("x^2") == Expr::binary(BinaryOp::Pow, Expr::variable(), Expr::constant(2)));
  CHECK(parse("-x^2") == Expr::negate(parse("x^2")));
  CHECK(parse("2^3^2") == parse("2^(3^2)"));
  CHECK(parse(" 1 - 2 - 3 ") == parse("(1-2)-3"));
  CHECK(parse("2.22e-16") == Expr::constant(2.22e-16));
  CHECK(parse("sin(x)") == Expr::call(Func::Sin, Expr::variable()));
}

TEST_CASE("parse rejects malformed text") {
  try {
    parse("2x");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("(x-1"), SyntaxError);
  CHECK_THROWS_AS(parse("x-"), SyntaxError);
  CHECK_THROWS_AS(parse("x**2"), SyntaxError);
  CHECK_THROWS_AS(parse("y+1"), UnknownIdentifier);
  CHECK_THROWS_AS(parse("log(x)"), UnknownIdentifier);
  CHECK_THROWS_AS(parse("sin x"), SyntaxError);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(parse(kDoubleRoots), 3) == 0.0);
  CHECK(evaluate(parse("x^2"), -2) == 4.0);
  CHECK(evaluate(parse("sqrt(x)+ln(x)+exp(0)"), 1) == 2.0);
  CHECK(evaluate(parse("abs(x)*cos(0)"), -3) == 3.0);
  CHECK(evaluate(parse(kClosePair), 9.3) == 0.0);
  CHECK(evaluate(parse("x^3"), -2) == -8.0);
  CHECK_THROWS_AS(evaluate(parse("1/x"), 0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("ln(x)"), 0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("sqrt(x)"), -1), DomainError);
  CHECK_THROWS_AS(evaluate(parse("x^0.5"), -1), DomainError);
}

TEST_CASE("differentiate") {
  CHECK(evaluate(differentiate(parse("x^2")), 3) == 6.0);
  CHECK(evaluate(differentiate(parse(kDoubleRoots)), 3) == 0.0);
  CHECK(evaluate(differentiate(parse(kDoubleRoots)), 4) == 0.0);
  CHECK(evaluate(differentiate(parse("sin(x)")), 0) == 1.0);
  CHECK(differentiate(parse("7")) == Expr::constant(0));
  CHECK(differentiate(parse("x")) == Expr::constant(1));
  CHECK(!depends_on_x(differentiate(parse("3*x"))));
  CHECK(depends_on_x(parse("1+x")));
  CHECK(!depends_on_x(parse("2^3")));
  CHECK_THROWS_AS(differentiate(parse("2^x")), Unsupported);
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* text : {kClosePair, kDoubleRoots, "-x^2", "1-(2-x)", "2^3^2", "-(-3)", "x/2/3", "sin(-x)*1e-300",
                           "(x-0.5)^3*(x-0.50001)^3*(x-4.0)*(x-4.0001)*(x-4.2)^2", "0.1+0.2"}) {
    const Expr e = parse(text);
    CHECK_MESSAGE(parse(to_string(e)) == e, text);
  }
  std::mt19937_64 rng(29);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_expr(rng, 4);
    CHECK(parse(to_string(e)) == e);
  }
}

TEST_CASE("symbolic derivatives agree with central differences") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> where(-2.0, 2.0);
  int accepted = 0, tries = 0;
  while (accepted < 1000) {
    REQUIRE(++tries < 100000);
    const Expr e = random_expr(rng, 4);
    const double x = where(rng);
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    double fp, fm, d;
    try {
      fp = evaluate(e, x + h);
      fm = evaluate(e, x - h);
      d = evaluate(differentiate(e), x);
    } catch (const DomainError&) {
      continue;
    }
    if (std::abs(fp) > 1e4 || std::abs(fm) > 1e4) continue;
    ++accepted;
    const double fd = (fp - fm) / (2 * h);
    CHECK_MESSAGE(std::abs(d - fd) <= 1e-5 * std::max(1.0, std::abs(d)), to_string(e) << " at " << x);
  }
}
