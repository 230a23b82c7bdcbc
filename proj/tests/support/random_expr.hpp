#pragma once

#include <cmath>
#include <random>

#include "amrroot/expr.hpp"

namespace amrroot::testing {

// Smooth random trees over [-2, 2]; sqrt and ln only see positive arguments.
inline expr::Expr random_expr(std::mt19937_64& rng, int depth) {
  using expr::BinaryOp, expr::Expr, expr::Func;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_real_distribution<double> constant(0.0, 2.0);  // parse never yields negative literals
  auto one_plus_square = [](Expr e) {
    return Expr::binary(BinaryOp::Add, Expr::constant(1.0), Expr::binary(BinaryOp::Mul, e, e));
  };
  switch (pick(rng)) {
    case 0: return Expr::variable();
    case 1: return Expr::constant(std::round(constant(rng) * 100) / 100);
    case 2: return Expr::binary(BinaryOp::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return Expr::binary(BinaryOp::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::binary(BinaryOp::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return Expr::binary(BinaryOp::Div, random_expr(rng, depth - 1), one_plus_square(random_expr(rng, depth - 1)));
    case 6: return Expr::binary(BinaryOp::Pow, random_expr(rng, depth - 1),
                                Expr::constant(std::uniform_int_distribution<int>(2, 3)(rng)));
    case 7: return Expr::call(std::bernoulli_distribution(0.5)(rng) ? Func::Sin : Func::Cos, random_expr(rng, depth - 1));
    case 8: return Expr::call(Func::Exp, Expr::call(Func::Sin, random_expr(rng, depth - 1)));
    default:
      return Expr::call(std::bernoulli_distribution(0.5)(rng) ? Func::Ln : Func::Sqrt,
                        one_plus_square(random_expr(rng, depth - 1)));
  }
}

}  // namespace amrroot::testing
