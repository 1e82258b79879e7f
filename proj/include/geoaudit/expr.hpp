#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoaudit/errors.hpp"

namespace geoaudit {

enum class Op { constant, variable, neg, add, sub, mul, div, pow, sqrt, exp, log, sin, cos };

/// Immutable expression tree over `dim` ambient coordinates.
///
/// Nodes are shared, so copying an Expr is cheap and a tree built by
/// substitute() may be a DAG. Evaluation never simplifies: the tree is
/// evaluated exactly as written.
class Expr {
 public:
  struct Node;

  Expr() = default;

  static Expr constant(double value, int dim);
  static Expr variable(int index, int dim);

  int dim() const noexcept { return dim_; }
  bool valid() const noexcept { return node_ != nullptr; }
  Op op() const;
  double constant_value() const;
  int variable_index() const;
  int exponent() const;
  Expr lhs() const;
  Expr rhs() const;

  // Stable node identity, used to memoize evaluation over shared subtrees.
  const void* id() const noexcept { return node_.get(); }

  double eval(std::span<const double> point) const;
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr operator+(const Expr& a, double b) { return a + constant(b, a.dim()); }
  friend Expr operator+(double a, const Expr& b) { return constant(a, b.dim()) + b; }
  friend Expr operator-(const Expr& a, double b) { return a - constant(b, a.dim()); }
  friend Expr operator-(double a, const Expr& b) { return constant(a, b.dim()) - b; }
  friend Expr operator*(const Expr& a, double b) { return a * constant(b, a.dim()); }
  friend Expr operator*(double a, const Expr& b) { return constant(a, b.dim()) * b; }
  friend Expr operator/(const Expr& a, double b) { return a / constant(b, a.dim()); }
  friend Expr operator/(double a, const Expr& b) { return constant(a, b.dim()) / b; }

  friend Expr pow(const Expr& base, int exponent);
  friend Expr sqrt(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);

 private:
  Expr(std::shared_ptr<const Node> node, int dim) : node_(std::move(node)), dim_(dim) {}
  static Expr make(Op op, const Expr& a, const Expr& b, int exponent = 0);
  const Node& node() const;

  std::shared_ptr<const Node> node_;
  int dim_ = 0;
};

struct Expr::Node {
  Op op;
  double value = 0.0;
  int index = 0;  // variable index or integer exponent
  Expr a;
  Expr b;
};

/// Wavefunction carrier: re + i*im over the same ambient dimension.
struct ComplexExpr {
  Expr re;
  Expr im;

  ComplexExpr() = default;
  explicit ComplexExpr(Expr real);
  ComplexExpr(Expr real, Expr imag);

  int dim() const noexcept { return re.dim(); }
};

/// Parses `text` over `dim` coordinates. Variables x,y,z,w name axes 0..3 and
/// x1..x9 name axes 0..8; `pi` is the only named constant.
Expr parse_expr(std::string_view text, int dim);

/// Replaces variable i of `e` by subs[i]; every substitute must have dimension `dim_out`.
Expr substitute(const Expr& e, std::span<const Expr> subs, int dim_out);

}  // namespace geoaudit
