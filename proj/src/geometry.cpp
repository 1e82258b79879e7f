#include "geoaudit/geometry.hpp"

#include <cmath>
#include <string>

namespace geoaudit {

void OperatorParams::validate() const {
  if (!(hbar > 0.0) || !(mu > 0.0)) throw ArgumentError("hbar and mu must be positive");
  if (!std::isfinite(xi) || !std::isfinite(eta)) throw ArgumentError("xi and eta must be finite");
}

void GeoJet::require_sdf(const char* field) const {
  if (!sdf_) throw ArgumentError(std::string(field) + " requires a signed-distance levelset");
}

const RJet& GeoJet::normal(int i) const {
  if (n_.empty()) throw OrderError("normal needs an order budget >= 1");
  return n_.at(i);
}

const RJet& GeoJet::grad_normal(int i, int j) const {
  if (grad_n_.empty()) throw OrderError("grad n needs an order budget >= 2");
  return grad_n_.at(i * dim_ + j);
}

const RJet& GeoJet::mean_curvature() const {
  if (!m_) throw OrderError("mean curvature needs an order budget >= 2");
  return *m_;
}

const RJet& GeoJet::k_invariant() const {
  if (!k_) throw OrderError("K needs an order budget >= 2");
  return *k_;
}

const RJet& GeoJet::grad_mean(int l) const {
  require_sdf("grad M");
  if (grad_m_.empty()) throw OrderError("grad M needs an order budget >= 3");
  return grad_m_.at(l);
}

const RJet& GeoJet::hess_normal(int i, int j, int l) const {
  require_sdf("hess n");
  if (hess_n_.empty()) throw OrderError("hess n needs an order budget >= 3");
  return hess_n_.at((i * dim_ + j) * dim_ + l);
}

const RJet& GeoJet::lap_mean() const {
  require_sdf("lap M");
  if (!lap_m_) throw OrderError("lap M needs an order budget >= 4");
  return *lap_m_;
}

Point GeoJet::normal_value() const {
  Point v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = normal(i).value();
  return v;
}

std::vector<double> GeoJet::grad_normal_value() const {
  std::vector<double> v(dim_ * dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) v[i * dim_ + j] = grad_normal(i, j).value();
  }
  return v;
}

GeoJet geometry_of(const Expr& f, bool sdf, std::span<const double> x, int order_budget) {
  if (order_budget < 1) throw OrderError("geometry needs an order budget >= 1");
  GeoJet g;
  const int d = f.dim();
  g.dim_ = d;
  g.budget_ = order_budget;
  g.sdf_ = sdf;
  g.point_.assign(x.begin(), x.end());

  const RJet fj = evaluate(f, x, order_budget);
  std::vector<RJet> grad;
  for (int i = 0; i < d; ++i) grad.push_back(lower(fj, i));
  if (sdf) {
    g.n_ = grad;
  } else {
    RJet norm2 = grad[0] * grad[0];
    for (int i = 1; i < d; ++i) norm2 += grad[i] * grad[i];
    if (!(norm2.value() > 0.0)) throw DomainError("grad f vanishes; normal undefined");
    const RJet inv = reciprocal(sqrt(norm2));
    for (int i = 0; i < d; ++i) g.n_.push_back(grad[i] * inv);
  }
  if (order_budget < 2) return g;

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g.grad_n_.push_back(lower(g.n_[i], j));
  }
  RJet trace = g.grad_n_[0];
  for (int i = 1; i < d; ++i) trace += g.grad_n_[i * d + i];
  g.m_ = -trace;

  // K over the tangent block: (grad n) P with P = I - n n^T. For an sdf the
  // normal is already a null vector of grad n, so P drops out.
  RJet k(d, order_budget - 2);
  for (int i = 0; i < d; ++i) {
    RJet along_n(d, order_budget - 2);
    if (!sdf) {
      for (int l = 0; l < d; ++l) along_n += g.grad_n_[i * d + l] * g.n_[l];
    }
    for (int j = 0; j < d; ++j) {
      RJet e = g.grad_n_[i * d + j];
      if (!sdf) e -= along_n * g.n_[j];
      k += e * e;
    }
  }
  g.k_ = k;

  if (!sdf || order_budget < 3) return g;
  for (int l = 0; l < d; ++l) g.grad_m_.push_back(lower(*g.m_, l));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) g.hess_n_.push_back(lower(g.grad_n_[i * d + j], l));
    }
  }
  if (order_budget < 4) return g;
  RJet lap = lower(g.grad_m_[0], 0);
  for (int l = 1; l < d; ++l) lap += lower(g.grad_m_[l], l);
  g.lap_m_ = lap;
  return g;
}

GeoJet geometry_at(const SurfaceSpec& spec, std::span<const double> x, int order_budget) {
  if (static_cast<int>(x.size()) != spec.dim) throw ArgumentError("point dimension does not match surface");
  const double fx = spec.levelset.eval(x);
  if (!(std::abs(fx) <= kSurfaceTol)) {
    throw ArgumentError("point is off the surface (|f| = " + std::to_string(std::abs(fx)) + ")");
  }
  return geometry_of(spec.levelset, spec.sdf, x, order_budget);
}

std::vector<double> residual_force_analytic(const GeoJet& geo, const OperatorParams& params) {
  params.validate();
  const int d = geo.dim();
  const double lap_m = geo.lap_mean().value();
  const double m = geo.mean_curvature().value();
  const Point n = geo.normal_value();

  std::vector<double> a(d, 0.0);
  std::vector<double> lap_n(d, 0.0);
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a[k] += geo.grad_normal(i, j).value() * geo.hess_normal(k, i, j).value();
      lap_n[k] += geo.hess_normal(k, i, i).value();
    }
  }
  double n_a = 0.0;
  double n_lap = 0.0;
  for (int k = 0; k < d; ++k) {
    n_a += n[k] * a[k];
    n_lap += n[k] * lap_n[k];
  }
  const double scale = -params.hbar * params.hbar / (4.0 * params.mu);
  std::vector<double> f(d);
  for (int k = 0; k < d; ++k) {
    f[k] = scale * (n[k] * lap_m + (2.0 - params.xi) * (a[k] - n[k] * n_a) +
                    (1.0 - params.eta) * m * (lap_n[k] - n[k] * n_lap));
  }
  return f;
}

double normal_curvature(const GeoJet& geo, std::span<const double> direction) {
  const int d = geo.dim();
  if (static_cast<int>(direction.size()) != d) throw ArgumentError("direction has wrong dimension");
  double norm2 = 0.0;
  double along = 0.0;
  for (int i = 0; i < d; ++i) {
    norm2 += direction[i] * direction[i];
    along += direction[i] * geo.normal(i).value();
  }
  if (std::abs(norm2 - 1.0) > 1e-10) throw ArgumentError("direction must be a unit vector");
  if (std::abs(along) > 1e-10) throw ArgumentError("direction is not tangent to the surface");
  double kappa = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) kappa += direction[i] * geo.grad_normal(i, j).value() * direction[j];
  }
  return kappa;
}

double classical_S(const GeoJet& geo, std::span<const double> p, double mu) {
  const int d = geo.dim();
  if (static_cast<int>(p.size()) != d) throw ArgumentError("momentum has wrong dimension");
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s += p[i] * geo.grad_normal(i, j).value() * p[j];
  }
  return s / (2.0 * mu);
}

}  // namespace geoaudit
