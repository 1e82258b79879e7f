#include "geoaudit/jet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <unordered_map>

namespace geoaudit {

namespace {

constexpr int kBase = kMaxJetOrder + 1;

int encode(const MultiIndex& alpha, int dim) {
  int key = 0;
  for (int i = dim - 1; i >= 0; --i) key = key * kBase + alpha[i];
  return key;
}

// All alpha with |alpha| = degree, first coordinate descending.
void enumerate_degree(int dim, int axis, int remaining, MultiIndex& alpha, std::vector<MultiIndex>& out) {
  if (axis == dim - 1) {
    alpha[axis] = remaining;
    out.push_back(alpha);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    alpha[axis] = k;
    enumerate_degree(dim, axis + 1, remaining - k, alpha, out);
  }
  alpha[axis] = 0;
}

}  // namespace

MultiIndexTable::MultiIndexTable(int dim) : dim_(dim) {
  for (int degree = 0; degree <= kMaxJetOrder; ++degree) {
    MultiIndex alpha{};
    enumerate_degree(dim, 0, degree, alpha, alphas_);
    size_by_order_[degree] = alphas_.size();
  }
  int max_key = 1;
  for (int i = 0; i < dim; ++i) max_key *= kBase;
  lookup_.assign(max_key, -1);
  degree_.resize(alphas_.size());
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    lookup_[encode(alphas_[i], dim)] = static_cast<int>(i);
    int d = 0;
    for (int k = 0; k < dim; ++k) d += alphas_[i][k];
    degree_[i] = d;
  }
  for (int axis = 0; axis < dim; ++axis) {
    raise_[axis].assign(alphas_.size(), -1);
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      if (degree_[i] >= kMaxJetOrder) continue;
      MultiIndex up = alphas_[i];
      ++up[axis];
      raise_[axis][i] = index(up);
    }
  }
  for (std::size_t a = 0; a < alphas_.size(); ++a) {
    for (std::size_t b = 0; b < alphas_.size(); ++b) {
      if (degree_[a] + degree_[b] > kMaxJetOrder) continue;
      MultiIndex sum{};
      for (int k = 0; k < dim; ++k) sum[k] = alphas_[a][k] + alphas_[b][k];
      products_.push_back({static_cast<int>(a), static_cast<int>(b), index(sum)});
    }
  }
  std::stable_sort(products_.begin(), products_.end(),
                   [this](const Product& l, const Product& r) { return degree_[l.c] < degree_[r.c]; });
  for (int order = 0; order <= kMaxJetOrder; ++order) {
    products_by_order_[order] = static_cast<std::size_t>(
        std::count_if(products_.begin(), products_.end(), [&](const Product& p) { return degree_[p.c] <= order; }));
  }
}

const MultiIndexTable& MultiIndexTable::get(int dim) {
  static const std::array<MultiIndexTable, kMaxJetDim> tables = {
      MultiIndexTable(1), MultiIndexTable(2), MultiIndexTable(3), MultiIndexTable(4)};
  if (dim < 1 || dim > kMaxJetDim) throw ArgumentError("jet dimension must be in [1, 4]");
  return tables[dim - 1];
}

int MultiIndexTable::index(const MultiIndex& alpha) const {
  for (int i = 0; i < dim_; ++i) {
    if (alpha[i] < 0 || alpha[i] > kMaxJetOrder) throw OrderError("multi-index out of table range");
  }
  const int flat = lookup_[encode(alpha, dim_)];
  if (flat < 0) throw OrderError("multi-index exceeds maximum jet order");
  return flat;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double multi_factorial(const MultiIndex& alpha, int dim) {
  double f = 1.0;
  for (int i = 0; i < dim; ++i) f *= factorial(alpha[i]);
  return f;
}

RJet compose(const RJet& u, std::span<const double> taylor) {
  RJet delta = u;
  delta[0] = 0.0;
  const int top = std::min<int>(u.order(), static_cast<int>(taylor.size()) - 1);
  RJet r = RJet::constant(u.dim(), u.order(), top >= 0 ? taylor[top] : 0.0);
  for (int m = top - 1; m >= 0; --m) {
    r = r * delta;
    r[0] += taylor[m];
  }
  return r;
}

RJet reciprocal(const RJet& u) {
  const double u0 = u.value();
  if (u0 == 0.0) throw DomainError("division by zero");
  std::vector<double> t(u.order() + 1);
  double inv = 1.0 / u0;
  double term = inv;
  for (int m = 0; m <= u.order(); ++m) {
    t[m] = term;
    term *= -inv;
  }
  return compose(u, t);
}

RJet operator/(const RJet& a, const RJet& b) { return a * reciprocal(b); }

RJet sqrt(const RJet& u) {
  const double u0 = u.value();
  if (!(u0 > 0.0)) throw DomainError("sqrt of nonpositive value");
  // binom(1/2, m) * u0^(1/2 - m)
  std::vector<double> t(u.order() + 1);
  double binom = 1.0;
  double power = std::sqrt(u0);
  for (int m = 0; m <= u.order(); ++m) {
    t[m] = binom * power;
    binom *= (0.5 - m) / (m + 1);
    power /= u0;
  }
  return compose(u, t);
}

RJet exp(const RJet& u) {
  std::vector<double> t(u.order() + 1);
  const double e0 = std::exp(u.value());
  for (int m = 0; m <= u.order(); ++m) t[m] = e0 / factorial(m);
  return compose(u, t);
}

RJet log(const RJet& u) {
  const double u0 = u.value();
  if (!(u0 > 0.0)) throw DomainError("log of nonpositive value");
  std::vector<double> t(u.order() + 1);
  t[0] = std::log(u0);
  for (int m = 1; m <= u.order(); ++m) t[m] = ((m % 2) ? 1.0 : -1.0) / (m * std::pow(u0, m));
  return compose(u, t);
}

namespace {

RJet shifted_trig(const RJet& u, double phase) {
  std::vector<double> t(u.order() + 1);
  for (int m = 0; m <= u.order(); ++m) {
    t[m] = std::sin(u.value() + phase + m * std::numbers::pi / 2) / factorial(m);
  }
  return compose(u, t);
}

}  // namespace

RJet sin(const RJet& u) { return shifted_trig(u, 0.0); }
RJet cos(const RJet& u) { return shifted_trig(u, std::numbers::pi / 2); }

RJet pow(const RJet& u, int exponent) {
  if (exponent < 0) return pow(reciprocal(u), -exponent);
  RJet result = RJet::constant(u.dim(), u.order(), 1.0);
  RJet base = u;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

namespace {

class JetEvaluator {
 public:
  JetEvaluator(std::span<const double> point, int order) : point_(point), order_(order) {}

  RJet operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    RJet j = compute(e);
    memo_.emplace(e.id(), j);
    return j;
  }

 private:
  RJet compute(const Expr& e) {
    const int dim = e.dim();
    try {
      switch (e.op()) {
        case Op::constant:
          return RJet::constant(dim, order_, e.constant_value());
        case Op::variable:
          return RJet::variable(dim, order_, e.variable_index(), point_[e.variable_index()]);
        case Op::neg:
          return -(*this)(e.lhs());
        case Op::add:
          return (*this)(e.lhs()) + (*this)(e.rhs());
        case Op::sub:
          return (*this)(e.lhs()) - (*this)(e.rhs());
        case Op::mul:
          return (*this)(e.lhs()) * (*this)(e.rhs());
        case Op::div:
          return (*this)(e.lhs()) / (*this)(e.rhs());
        case Op::pow:
          return pow((*this)(e.lhs()), e.exponent());
        case Op::sqrt:
          return sqrt((*this)(e.lhs()));
        case Op::exp:
          return exp((*this)(e.lhs()));
        case Op::log:
          return log((*this)(e.lhs()));
        case Op::sin:
          return sin((*this)(e.lhs()));
        case Op::cos:
          return cos((*this)(e.lhs()));
      }
    } catch (const DomainError& err) {
      // Report the innermost offending subexpression only.
      if (std::string_view(err.what()).find(" in ") != std::string_view::npos) throw;
      throw DomainError(std::string(err.what()) + " in " + e.str());
    }
    return RJet(dim, order_);
  }

  std::span<const double> point_;
  int order_;
  std::unordered_map<const void*, RJet> memo_;
};

}  // namespace

RJet evaluate(const Expr& e, std::span<const double> point, int order) {
  if (static_cast<int>(point.size()) != e.dim()) {
    throw ArgumentError("evaluation point dimension does not match expression");
  }
  if (order < 0) throw ArgumentError("jet order must be >= 0");
  return JetEvaluator(point, order)(e);
}

CJet evaluate(const ComplexExpr& e, std::span<const double> point, int order) {
  const RJet re = evaluate(e.re, point, order);
  const RJet im = evaluate(e.im, point, order);
  CJet out(re.dim(), order);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

}  // namespace geoaudit
