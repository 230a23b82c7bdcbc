#pragma once

// Expressions in one variable `x`, for objectives given as text.
//
// Grammar (highest binding first):
//
//   primary := number | "x" | func "(" sum ")" | "(" sum ")"
//   power   := primary [ "^" unary ]          right-associative
//   unary   := ("-" | "+") unary | power
//   product := unary { ("*" | "/") unary }
//   sum     := product { ("+" | "-") product }
//
//   func    := sin | cos | tan | exp | ln | sqrt | abs
//   number  := decimal literal, optional exponent (1e-5, 2.22E-16)
//
// Implicit multiplication ("2x") is rejected. -x^2 parses as -(x^2).

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "amrroot/errors.hpp"

namespace amrroot::expr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Differentiation of a construct the differentiator does not handle.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };

struct Node;

/// Immutable expression tree; copies share structure.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Func fn, Expr arg);

  const Node& node() const noexcept { return *node_; }

  /// Structural equality.
  friend bool operator==(const Expr& l, const Expr& r);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Constant {
  double value;
};
struct Variable {};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Call {
  Func fn;
  Expr arg;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Call> value;
};

Expr parse(std::string_view text);

/// Throws DomainError for ln of a nonpositive value, sqrt of a negative value,
/// division by zero, or any other NaN-producing operation.
double evaluate(const Expr& e, double x);

/// Symbolic first derivative. Literal zeros and ones are folded away.
/// Exponents must not depend on x (Unsupported otherwise).
Expr differentiate(const Expr& e);

bool depends_on_x(const Expr& e);

/// Fully parenthesised canonical text; parse(to_string(e)) == e for any e
/// produced by parse.
std::string to_string(const Expr& e);

std::string_view to_string(Func fn) noexcept;

}  // namespace amrroot::expr
