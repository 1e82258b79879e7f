#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "geoaudit/errors.hpp"
#include "geoaudit/expr.hpp"

namespace geoaudit {

inline constexpr int kMaxJetDim = 4;
inline constexpr int kMaxJetOrder = 6;

using MultiIndex = std::array<int, kMaxJetDim>;

/// Graded-lexicographic enumeration of the multi-indices |alpha| <= kMaxJetOrder
/// in a fixed dimension. Because the grading is by total degree, the first
/// size(order) entries are exactly the indices of a jet of that order, so
/// truncation is a prefix operation and every table below serves all orders.
class MultiIndexTable {
 public:
  struct Product {
    int a, b, c;  // coeff[c] += lhs[a] * rhs[b]
  };

  static const MultiIndexTable& get(int dim);

  int dim() const noexcept { return dim_; }
  std::size_t size(int order) const { return size_by_order_[order]; }
  const MultiIndex& alpha(std::size_t flat) const { return alphas_[flat]; }
  int degree(std::size_t flat) const { return degree_[flat]; }
  int index(const MultiIndex& alpha) const;
  // Index of alpha + e_axis, valid for |alpha| < kMaxJetOrder.
  int raise(std::size_t flat, int axis) const { return raise_[axis][flat]; }
  std::span<const Product> products(int order) const {
    return {products_.data(), products_by_order_[order]};
  }

 private:
  explicit MultiIndexTable(int dim);

  int dim_;
  std::vector<MultiIndex> alphas_;
  std::vector<int> degree_;
  std::vector<int> lookup_;
  std::array<std::vector<int>, kMaxJetDim> raise_;
  std::array<std::size_t, kMaxJetOrder + 1> size_by_order_{};
  std::vector<Product> products_;
  std::array<std::size_t, kMaxJetOrder + 1> products_by_order_{};
};

double factorial(int n);
double multi_factorial(const MultiIndex& alpha, int dim);

/// Truncated multivariate Taylor expansion at a point:
/// coeff(alpha) = d^alpha g(x0) / alpha!, dense over |alpha| <= order.
template <typename T>
class Jet {
 public:
  using value_type = T;

  Jet() = default;
  Jet(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1 || dim > kMaxJetDim) throw ArgumentError("jet dimension must be in [1, 4]");
    if (order < 0 || order > kMaxJetOrder) throw ArgumentError("jet order must be in [0, 6]");
    c_.assign(table().size(order), T{});
  }

  static Jet constant(int dim, int order, T value) {
    Jet j(dim, order);
    j.c_[0] = value;
    return j;
  }

  static Jet variable(int dim, int order, int axis, T at) {
    Jet j(dim, order);
    j.c_[0] = at;
    if (order >= 1) j.c_[1 + axis] = T{1};
    return j;
  }

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return c_.size(); }
  T value() const { return c_[0]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  std::span<const T> coeffs() const noexcept { return c_; }
  const MultiIndexTable& table() const { return MultiIndexTable::get(dim_); }

  T coeff(const MultiIndex& alpha) const {
    if (degree_of(alpha) > order_) throw OrderError("multi-index exceeds jet order");
    return c_[table().index(alpha)];
  }

  Jet truncated(int order) const {
    if (order > order_) throw OrderError("cannot raise jet order by truncation");
    Jet j = *this;
    j.order_ = order;
    j.c_.resize(table().size(order));
    return j;
  }

  template <typename U>
  Jet<U> cast() const {
    Jet<U> j(dim_, order_);
    for (std::size_t i = 0; i < c_.size(); ++i) j[i] = static_cast<U>(c_[i]);
    return j;
  }

  Jet& operator+=(const Jet& o) { return accumulate(o, 1); }
  Jet& operator-=(const Jet& o) { return accumulate(o, -1); }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet operator-() const {
    Jet j = *this;
    for (auto& v : j.c_) v = -v;
    return j;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator-(Jet a, T s) {
    a.c_[0] -= s;
    return a;
  }

 private:
  int degree_of(const MultiIndex& alpha) const {
    int d = 0;
    for (int i = 0; i < dim_; ++i) d += alpha[i];
    return d;
  }

  Jet& accumulate(const Jet& o, int sign) {
    if (o.dim_ != dim_) throw ArgumentError("jet dimension mismatch");
    if (o.order_ < order_) *this = truncated(o.order_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += sign > 0 ? o.c_[i] : -o.c_[i];
    return *this;
  }

  int dim_ = 0;
  int order_ = 0;
  std::vector<T> c_;
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

/// Cauchy product truncated at min(a.order, b.order).
template <typename A, typename B>
auto operator*(const Jet<A>& a, const Jet<B>& b) -> Jet<std::common_type_t<A, B>> {
  using T = std::common_type_t<A, B>;
  if (a.dim() != b.dim()) throw ArgumentError("jet dimension mismatch");
  const int order = a.order() < b.order() ? a.order() : b.order();
  Jet<T> out(a.dim(), order);
  for (const auto& p : a.table().products(order)) {
    out[p.c] += static_cast<T>(a[p.a]) * static_cast<T>(b[p.b]);
  }
  return out;
}

inline CJet operator+(const CJet& a, const RJet& b) { return a + b.cast<std::complex<double>>(); }
inline CJet operator-(const CJet& a, const RJet& b) { return a - b.cast<std::complex<double>>(); }

/// d^alpha g(x0) = alpha! * coeff(alpha).
template <typename T>
T partial(const Jet<T>& j, const MultiIndex& alpha) {
  return j.coeff(alpha) * multi_factorial(alpha, j.dim());
}

/// Jet of d g / d x_axis, one order lower.
template <typename T>
Jet<T> lower(const Jet<T>& j, int axis) {
  if (j.order() < 1) throw OrderError("cannot differentiate an order-0 jet");
  if (axis < 0 || axis >= j.dim()) throw ArgumentError("differentiation axis out of range");
  const auto& table = j.table();
  Jet<T> out(j.dim(), j.order() - 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = j[table.raise(i, axis)] * static_cast<double>(table.alpha(i)[axis] + 1);
  }
  return out;
}

// Univariate functions composed with a real jet: g(u) = sum_m t_m (u - u0)^m.
RJet compose(const RJet& u, std::span<const double> taylor);
RJet reciprocal(const RJet& u);
RJet operator/(const RJet& a, const RJet& b);
RJet sqrt(const RJet& u);
RJet exp(const RJet& u);
RJet log(const RJet& u);
RJet sin(const RJet& u);
RJet cos(const RJet& u);
RJet pow(const RJet& u, int exponent);

/// Jet of `e` at `point` carrying all partials up to `order`.
RJet evaluate(const Expr& e, std::span<const double> point, int order);
CJet evaluate(const ComplexExpr& e, std::span<const double> point, int order);

}  // namespace geoaudit
