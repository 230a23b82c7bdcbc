#include "amrroot/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

namespace amrroot::expr {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Recursive-descent parser over the raw text.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = sum();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw SyntaxError(std::string("expected '") + c + "' before end of input", pos_);
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(BinaryOp::Add, lhs, product());
      else if (accept('-'))
        lhs = Expr::binary(BinaryOp::Sub, lhs, product());
      else
        return lhs;
    }
  }

  Expr product() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(BinaryOp::Mul, lhs, unary());
      else if (accept('/'))
        lhs = Expr::binary(BinaryOp::Div, lhs, unary());
      else
        return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, unary());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      Expr inner = sum();
      expect(')');
      return inner;
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (digit(pos_) || (pos_ < text_.size() && text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (digit(k)) {
        pos_ = k;
        while (digit(pos_)) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw SyntaxError("malformed number", start);
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();
    for (const auto& [fname, fn] : kFunctions) {
      if (name == fname) {
        if (!accept('(')) throw SyntaxError("expected '(' after " + std::string(name), pos_);
        Expr arg = sum();
        expect(')');
        return Expr::call(fn, arg);
      }
    }
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'", start);
  }
};

std::optional<double> constant_value(const Expr& e) {
  if (const auto* c = std::get_if<Constant>(&e.node().value)) return c->value;
  return std::nullopt;
}

bool is_constant(const Expr& e, double v) {
  const auto c = constant_value(e);
  return c && *c == v;
}

// Builders with folding of literal zeros and ones.

Expr add(const Expr& a, const Expr& b) {
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  if (auto ca = constant_value(a), cb = constant_value(b); ca && cb) return Expr::constant(*ca + *cb);
  return Expr::binary(BinaryOp::Add, a, b);
}

Expr neg(const Expr& a) {
  if (auto ca = constant_value(a)) return Expr::constant(-*ca);
  return Expr::negate(a);
}

Expr sub(const Expr& a, const Expr& b) {
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a, 0.0)) return neg(b);
  if (auto ca = constant_value(a), cb = constant_value(b); ca && cb) return Expr::constant(*ca - *cb);
  return Expr::binary(BinaryOp::Sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return Expr::constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  if (auto ca = constant_value(a), cb = constant_value(b); ca && cb) return Expr::constant(*ca * *cb);
  return Expr::binary(BinaryOp::Mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
  if (is_constant(a, 0.0)) return Expr::constant(0.0);
  if (is_constant(b, 1.0)) return a;
  return Expr::binary(BinaryOp::Div, a, b);
}

Expr pow(const Expr& a, const Expr& b) {
  if (is_constant(b, 1.0)) return a;
  if (is_constant(b, 0.0)) return Expr::constant(1.0);
  return Expr::binary(BinaryOp::Pow, a, b);
}

Expr fn(Func f, const Expr& a) { return Expr::call(f, a); }

double checked(double v) {
  if (std::isnan(v)) throw DomainError("expression is undefined here");
  return v;
}

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

void print(const Expr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const Constant& c) {
                   if (c.value < 0.0 || std::signbit(c.value)) {
                     out += "(-";
                     append_number(out, -c.value);
                     out += ')';
                   } else {
                     append_number(out, c.value);
                   }
                 },
                 [&](const Variable&) { out += 'x'; },
                 [&](const Negate& n) {
                   out += "(-";
                   print(n.operand, out);
                   out += ')';
                 },
                 [&](const Binary& b) {
                   static constexpr std::array<const char*, 5> ops{" + ", " - ", " * ", " / ", "^"};
                   out += '(';
                   print(b.lhs, out);
                   out += ops[static_cast<std::size_t>(b.op)];
                   print(b.rhs, out);
                   out += ')';
                 },
                 [&](const Call& c) {
                   out += to_string(c.fn);
                   out += '(';
                   print(c.arg, out);
                   out += ')';
                 },
             },
             e.node().value);
}

}  // namespace

Expr Expr::constant(double value) { return Expr(std::make_shared<const Node>(Node{Constant{value}})); }
Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{Variable{}})); }
Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Node{Negate{std::move(operand)}}));
}
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}}));
}
Expr Expr::call(Func fn, Expr arg) {
  return Expr(std::make_shared<const Node>(Node{Call{fn, std::move(arg)}}));
}

bool operator==(const Expr& l, const Expr& r) {
  if (l.node_ == r.node_) return true;
  const auto& a = l.node().value;
  const auto& b = r.node().value;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const Constant& c) { return c.value == std::get<Constant>(b).value; },
          [&](const Variable&) { return true; },
          [&](const Negate& n) { return n.operand == std::get<Negate>(b).operand; },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b);
            return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Call& x) {
            const auto& y = std::get<Call>(b);
            return x.fn == y.fn && x.arg == y.arg;
          },
      },
      a);
}

std::string_view to_string(Func f) noexcept {
  for (const auto& [name, g] : kFunctions)
    if (g == f) return name;
  return "?";
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

double evaluate(const Expr& e, double x) {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Variable&) { return x; },
          [x](const Negate& n) { return -evaluate(n.operand, x); },
          [x](const Binary& b) {
            const double l = evaluate(b.lhs, x);
            const double r = evaluate(b.rhs, x);
            switch (b.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul: return l * r;
              case BinaryOp::Div:
                if (r == 0.0) throw DomainError("division by zero");
                return l / r;
              case BinaryOp::Pow:
                if (l == 0.0 && r < 0.0) throw DomainError("zero to a negative power");
                return checked(std::pow(l, r));
            }
            return 0.0;
          },
          [x](const Call& c) {
            const double a = evaluate(c.arg, x);
            switch (c.fn) {
              case Func::Sin: return std::sin(a);
              case Func::Cos: return std::cos(a);
              case Func::Tan: return checked(std::tan(a));
              case Func::Exp: return std::exp(a);
              case Func::Ln:
                if (!(a > 0.0)) throw DomainError("ln of a nonpositive value");
                return std::log(a);
              case Func::Sqrt:
                if (a < 0.0) throw DomainError("sqrt of a negative value");
                return std::sqrt(a);
              case Func::Abs: return std::abs(a);
            }
            return 0.0;
          },
      },
      e.node().value);
}

bool depends_on_x(const Expr& e) {
  return std::visit(overloaded{
                        [](const Constant&) { return false; },
                        [](const Variable&) { return true; },
                        [](const Negate& n) { return depends_on_x(n.operand); },
                        [](const Binary& b) { return depends_on_x(b.lhs) || depends_on_x(b.rhs); },
                        [](const Call& c) { return depends_on_x(c.arg); },
                    },
                    e.node().value);
}

Expr differentiate(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Constant&) { return Expr::constant(0.0); },
          [](const Variable&) { return Expr::constant(1.0); },
          [](const Negate& n) { return neg(differentiate(n.operand)); },
          [](const Binary& b) {
            const Expr& u = b.lhs;
            const Expr& v = b.rhs;
            switch (b.op) {
              case BinaryOp::Add: return add(differentiate(u), differentiate(v));
              case BinaryOp::Sub: return sub(differentiate(u), differentiate(v));
              case BinaryOp::Mul:
                return add(mul(differentiate(u), v), mul(u, differentiate(v)));
              case BinaryOp::Div:
                return div(sub(mul(differentiate(u), v), mul(u, differentiate(v))),
                           pow(v, Expr::constant(2.0)));
              case BinaryOp::Pow: {
                if (depends_on_x(v)) throw Unsupported("exponent depends on x");
                if (!depends_on_x(u)) return Expr::constant(0.0);
                // d(u^c) = c * u^(c-1) * u'
                const Expr reduced =
                    constant_value(v) ? Expr::constant(*constant_value(v) - 1.0) : sub(v, Expr::constant(1.0));
                return mul(mul(v, pow(u, reduced)), differentiate(u));
              }
            }
            return Expr::constant(0.0);
          },
          [](const Call& c) {
            const Expr& u = c.arg;
            const Expr du = differentiate(u);
            switch (c.fn) {
              case Func::Sin: return mul(fn(Func::Cos, u), du);
              case Func::Cos: return neg(mul(fn(Func::Sin, u), du));
              case Func::Tan: return div(du, pow(fn(Func::Cos, u), Expr::constant(2.0)));
              case Func::Exp: return mul(fn(Func::Exp, u), du);
              case Func::Ln: return div(du, u);
              case Func::Sqrt: return div(du, mul(Expr::constant(2.0), fn(Func::Sqrt, u)));
              case Func::Abs: return mul(div(u, fn(Func::Abs, u)), du);
            }
            return Expr::constant(0.0);
          },
      },
      e.node().value);
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace amrroot::expr
