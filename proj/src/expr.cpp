#include "geoaudit/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_map>

namespace geoaudit {

namespace {

void check_same_dim(const Expr& a, const Expr& b) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("expression dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr Expr::constant(double value, int dim) {
  if (dim < 1) throw ArgumentError("expression dimension must be >= 1");
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = value;
  return Expr(std::move(n), dim);
}

Expr Expr::variable(int index, int dim) {
  if (dim < 1) throw ArgumentError("expression dimension must be >= 1");
  if (index < 0 || index >= dim) {
    throw ArgumentError("variable index " + std::to_string(index) + " out of range for dimension " +
                        std::to_string(dim));
  }
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->index = index;
  return Expr(std::move(n), dim);
}

Expr Expr::make(Op op, const Expr& a, const Expr& b, int exponent) {
  if (!a.valid()) throw ArgumentError("empty expression operand");
  if (b.valid()) check_same_dim(a, b);
  auto n = std::make_shared<Node>();
  n->op = op;
  n->index = exponent;
  n->a = a;
  n->b = b;
  return Expr(std::move(n), a.dim());
}

const Expr::Node& Expr::node() const {
  if (!node_) throw ArgumentError("empty expression");
  return *node_;
}

Op Expr::op() const { return node().op; }
double Expr::constant_value() const { return node().value; }
int Expr::variable_index() const { return node().index; }
int Expr::exponent() const { return node().index; }
Expr Expr::lhs() const { return node().a; }
Expr Expr::rhs() const { return node().b; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Op::add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Op::sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Op::mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Op::div, a, b); }
Expr operator-(const Expr& a) { return Expr::make(Op::neg, a, Expr()); }
Expr pow(const Expr& base, int exponent) { return Expr::make(Op::pow, base, Expr(), exponent); }
Expr sqrt(const Expr& a) { return Expr::make(Op::sqrt, a, Expr()); }
Expr exp(const Expr& a) { return Expr::make(Op::exp, a, Expr()); }
Expr log(const Expr& a) { return Expr::make(Op::log, a, Expr()); }
Expr sin(const Expr& a) { return Expr::make(Op::sin, a, Expr()); }
Expr cos(const Expr& a) { return Expr::make(Op::cos, a, Expr()); }

double Expr::eval(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_) {
    throw ArgumentError("evaluation point has " + std::to_string(point.size()) +
                        " coordinates, expression expects " + std::to_string(dim_));
  }
  const Node& n = node();
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return point[n.index];
    case Op::neg:
      return -n.a.eval(point);
    case Op::add:
      return n.a.eval(point) + n.b.eval(point);
    case Op::sub:
      return n.a.eval(point) - n.b.eval(point);
    case Op::mul:
      return n.a.eval(point) * n.b.eval(point);
    case Op::div: {
      const double den = n.b.eval(point);
      if (den == 0.0) throw DomainError("division by zero in " + str());
      return n.a.eval(point) / den;
    }
    case Op::pow: {
      const double base = n.a.eval(point);
      if (base == 0.0 && n.index < 0) throw DomainError("negative power of zero in " + str());
      return std::pow(base, n.index);
    }
    case Op::sqrt: {
      const double v = n.a.eval(point);
      if (!(v > 0.0)) throw DomainError("sqrt of nonpositive value in " + str());
      return std::sqrt(v);
    }
    case Op::exp:
      return std::exp(n.a.eval(point));
    case Op::log: {
      const double v = n.a.eval(point);
      if (!(v > 0.0)) throw DomainError("log of nonpositive value in " + str());
      return std::log(v);
    }
    case Op::sin:
      return std::sin(n.a.eval(point));
    case Op::cos:
      return std::cos(n.a.eval(point));
  }
  return 0.0;
}

std::string Expr::str() const {
  const Node& n = node();
  switch (n.op) {
    case Op::constant:
      return n.value < 0.0 ? "(-" + format_number(-n.value) + ")" : format_number(n.value);
    case Op::variable:
      if (n.index < 4) return std::string(1, "xyzw"[n.index]);
      return "x" + std::to_string(n.index + 1);
    case Op::neg:
      return "(-" + n.a.str() + ")";
    case Op::add:
      return "(" + n.a.str() + "+" + n.b.str() + ")";
    case Op::sub:
      return "(" + n.a.str() + "-" + n.b.str() + ")";
    case Op::mul:
      return "(" + n.a.str() + "*" + n.b.str() + ")";
    case Op::div:
      return "(" + n.a.str() + "/" + n.b.str() + ")";
    case Op::pow:
      return "(" + n.a.str() + ")^" + std::to_string(n.index);
    case Op::sqrt:
      return "sqrt(" + n.a.str() + ")";
    case Op::exp:
      return "exp(" + n.a.str() + ")";
    case Op::log:
      return "log(" + n.a.str() + ")";
    case Op::sin:
      return "sin(" + n.a.str() + ")";
    case Op::cos:
      return "cos(" + n.a.str() + ")";
  }
  return {};
}

ComplexExpr::ComplexExpr(Expr real) : re(std::move(real)), im(Expr::constant(0.0, re.dim())) {}

ComplexExpr::ComplexExpr(Expr real, Expr imag) : re(std::move(real)), im(std::move(imag)) {
  if (re.dim() != im.dim()) throw ArgumentError("real and imaginary parts differ in dimension");
}

// Recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' integer] | '-' factor
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
namespace {

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * factor();
      } else if (accept('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr base = atom();
    if (accept('^')) return pow(base, integer());
    return base;
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("integer exponent expected");
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail("only integer exponents are supported");
    }
    const int value = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    return negative ? -value : value;
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit(pos_)) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (digit(p)) {
        pos_ = p;
        while (digit(pos_)) ++pos_;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token == ".") {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(std::stod(token), dim_);
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) fail("')' expected");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    using Fn = Expr (*)(const Expr&);
    static const std::unordered_map<std::string, Fn> functions = {
        {"sqrt", [](const Expr& a) { return sqrt(a); }}, {"exp", [](const Expr& a) { return exp(a); }},
        {"log", [](const Expr& a) { return log(a); }},   {"sin", [](const Expr& a) { return sin(a); }},
        {"cos", [](const Expr& a) { return cos(a); }},
    };
    if (auto it = functions.find(name); it != functions.end()) {
      if (!accept('(')) fail("'(' expected after " + name);
      Expr arg = expr();
      if (!accept(')')) fail("')' expected");
      return it->second(arg);
    }
    if (name == "pi") return Expr::constant(std::numbers::pi, dim_);

    int index = -1;
    if (name.size() == 1 && std::string_view("xyzw").find(name[0]) != std::string_view::npos) {
      index = static_cast<int>(std::string_view("xyzw").find(name[0]));
    } else if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') {
      index = name[1] - '1';
    }
    if (index < 0) {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (index >= dim_) {
      pos_ = start;
      fail("variable '" + name + "' exceeds dimension " + std::to_string(dim_));
    }
    return Expr::variable(index, dim_);
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

Expr substitute_rec(const Expr& e, std::span<const Expr> subs, int dim_out,
                    std::unordered_map<const void*, Expr>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out;
  switch (e.op()) {
    case Op::constant:
      out = Expr::constant(e.constant_value(), dim_out);
      break;
    case Op::variable:
      out = subs[e.variable_index()];
      break;
    case Op::neg:
      out = -substitute_rec(e.lhs(), subs, dim_out, memo);
      break;
    case Op::add:
      out = substitute_rec(e.lhs(), subs, dim_out, memo) + substitute_rec(e.rhs(), subs, dim_out, memo);
      break;
    case Op::sub:
      out = substitute_rec(e.lhs(), subs, dim_out, memo) - substitute_rec(e.rhs(), subs, dim_out, memo);
      break;
    case Op::mul:
      out = substitute_rec(e.lhs(), subs, dim_out, memo) * substitute_rec(e.rhs(), subs, dim_out, memo);
      break;
    case Op::div:
      out = substitute_rec(e.lhs(), subs, dim_out, memo) / substitute_rec(e.rhs(), subs, dim_out, memo);
      break;
    case Op::pow:
      out = pow(substitute_rec(e.lhs(), subs, dim_out, memo), e.exponent());
      break;
    case Op::sqrt:
      out = sqrt(substitute_rec(e.lhs(), subs, dim_out, memo));
      break;
    case Op::exp:
      out = exp(substitute_rec(e.lhs(), subs, dim_out, memo));
      break;
    case Op::log:
      out = log(substitute_rec(e.lhs(), subs, dim_out, memo));
      break;
    case Op::sin:
      out = sin(substitute_rec(e.lhs(), subs, dim_out, memo));
      break;
    case Op::cos:
      out = cos(substitute_rec(e.lhs(), subs, dim_out, memo));
      break;
  }
  memo.emplace(e.id(), out);
  return out;
}

}  // namespace

Expr parse_expr(std::string_view text, int dim) {
  if (dim < 1) throw ArgumentError("expression dimension must be >= 1");
  return Parser(text, dim).parse();
}

Expr substitute(const Expr& e, std::span<const Expr> subs, int dim_out) {
  if (static_cast<int>(subs.size()) != e.dim()) {
    throw ArgumentError("substitute: expected " + std::to_string(e.dim()) + " substitutes, got " +
                        std::to_string(subs.size()));
  }
  for (const Expr& s : subs) {
    if (s.dim() != dim_out) throw ArgumentError("substitute: substitute has wrong dimension");
  }
  std::unordered_map<const void*, Expr> memo;
  return substitute_rec(e, subs, dim_out, memo);
}

}  // namespace geoaudit
