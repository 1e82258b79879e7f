#include "geoaudit/classical.hpp"

#include <algorithm>
#include <cmath>

namespace geoaudit {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct LevelsetLocal {
  double value;
  Point grad;
  std::vector<double> hess;  // row-major
};

LevelsetLocal local(const Expr& f, std::span<const double> x, int order) {
  const RJet j = evaluate(f, x, order);
  const int d = f.dim();
  LevelsetLocal l{j.value(), Point(d), {}};
  for (int i = 0; i < d; ++i) l.grad[i] = j[1 + i];
  if (order >= 2) {
    l.hess.resize(d * d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        MultiIndex alpha{};
        ++alpha[i];
        ++alpha[k];
        l.hess[i * d + k] = partial(j, alpha);
      }
    }
  }
  return l;
}

Point unit_normal(const Point& grad) {
  const double norm = std::sqrt(dot(grad, grad));
  if (!(norm > 0.0)) throw DomainError("grad f vanishes; normal undefined");
  Point n = grad;
  for (double& v : n) v /= norm;
  return n;
}

Point project_position(const Expr& f, Point x) {
  for (int iter = 0; iter < 10; ++iter) {
    const LevelsetLocal l = local(f, x, 1);
    if (std::abs(l.value) <= 1e-15) return x;
    const double g2 = dot(l.grad, l.grad);
    if (!(g2 > 0.0)) throw DomainError("grad f vanishes during projection");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= l.value * l.grad[i] / g2;
    if (std::abs(f.eval(x)) <= 1e-15) return x;
  }
  const double residual = std::abs(f.eval(x));
  if (residual > kConstraintTol) {
    throw DomainError("Newton projection did not converge in 10 iterations (step too large?)");
  }
  return x;
}

}  // namespace

Point TrajectoryState::velocity(double mu) const {
  Point v = p;
  for (double& c : v) c /= mu;
  return v;
}

TrajectoryState make_state(const Expr& f, double t, Point x, Point p, double mu) {
  if (static_cast<int>(x.size()) != f.dim() || x.size() != p.size()) {
    throw ArgumentError("state dimension does not match levelset");
  }
  TrajectoryState s;
  s.t = t;
  const LevelsetLocal l = local(f, x, 1);
  s.f_value = l.value;
  s.normal_momentum = dot(unit_normal(l.grad), p);
  s.energy = dot(p, p) / (2.0 * mu);
  s.x = std::move(x);
  s.p = std::move(p);
  return s;
}

Point classical_force(const Expr& f, std::span<const double> x, std::span<const double> p, double mu,
                      ForceForm form) {
  const int d = f.dim();
  if (form == ForceForm::weinberg) {
    const LevelsetLocal l = local(f, x, 2);
    double quad = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) quad += p[i] * l.hess[i * d + k] * p[k];
    }
    const double g2 = dot(l.grad, l.grad);
    Point out(d);
    for (int i = 0; i < d; ++i) out[i] = -l.grad[i] * quad / (mu * g2);
    return out;
  }
  const GeoJet geo = geometry_of(f, false, x, 2);
  const double s = classical_S(geo, p, mu);
  Point out = geo.normal_value();
  for (double& v : out) v *= -2.0 * s;
  return out;
}

TrajectoryState step(const TrajectoryState& state, const Expr& f, double h, ForceForm form, double mu) {
  if (!(h > 0.0)) throw ArgumentError("step size must be positive");
  const std::size_t d = state.x.size();
  auto shifted = [d](const Point& base, const Point& delta, double s) {
    Point out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = base[i] + s * delta[i];
    return out;
  };
  auto velocity = [mu](const Point& p) {
    Point v = p;
    for (double& c : v) c /= mu;
    return v;
  };

  const Point& x = state.x;
  const Point& p = state.p;
  const Point kx1 = velocity(p);
  const Point kp1 = classical_force(f, x, p, mu, form);
  const Point x2 = shifted(x, kx1, 0.5 * h);
  const Point p2 = shifted(p, kp1, 0.5 * h);
  const Point kx2 = velocity(p2);
  const Point kp2 = classical_force(f, x2, p2, mu, form);
  const Point x3 = shifted(x, kx2, 0.5 * h);
  const Point p3 = shifted(p, kp2, 0.5 * h);
  const Point kx3 = velocity(p3);
  const Point kp3 = classical_force(f, x3, p3, mu, form);
  const Point x4 = shifted(x, kx3, h);
  const Point p4 = shifted(p, kp3, h);
  const Point kx4 = velocity(p4);
  const Point kp4 = classical_force(f, x4, p4, mu, form);

  Point xn(d);
  Point pn(d);
  for (std::size_t i = 0; i < d; ++i) {
    xn[i] = x[i] + h / 6.0 * (kx1[i] + 2.0 * kx2[i] + 2.0 * kx3[i] + kx4[i]);
    pn[i] = p[i] + h / 6.0 * (kp1[i] + 2.0 * kp2[i] + 2.0 * kp3[i] + kp4[i]);
  }
  xn = project_position(f, std::move(xn));
  const Point n = unit_normal(local(f, xn, 1).grad);
  const double along = dot(n, pn);
  for (std::size_t i = 0; i < d; ++i) pn[i] -= along * n[i];
  return make_state(f, state.t + h, std::move(xn), std::move(pn), mu);
}

Trajectory run_trajectory(const Expr& f, Point x0, Point p0, double T, double h, ForceForm form, double mu,
                          int record_every) {
  if (!(T >= 0.0)) throw ArgumentError("duration must be nonnegative");
  if (!(h > 0.0)) throw ArgumentError("step size must be positive");
  if (!(mu > 0.0)) throw ArgumentError("mass must be positive");
  if (record_every < 1) throw ArgumentError("record_every must be >= 1");

  TrajectoryState s = make_state(f, 0.0, std::move(x0), std::move(p0), mu);
  if (std::abs(s.f_value) > kConstraintTol) throw ArgumentError("initial position is off the surface");
  const double p_norm = std::sqrt(dot(s.p, s.p));
  if (p_norm > 0.0 && std::abs(s.normal_momentum) / p_norm > kConstraintTol) {
    throw ArgumentError("initial momentum is not tangential");
  }

  Trajectory traj;
  const int steps = T == 0.0 ? 0 : static_cast<int>(std::ceil(T / h - 1e-9));
  const double h_eff = steps == 0 ? h : T / steps;
  traj.summary.steps = steps;
  traj.summary.h = h_eff;
  const Point x_start = s.x;
  const double e0 = s.energy;

  auto track = [&](const TrajectoryState& st) {
    const double de = std::abs(st.energy - e0);
    traj.summary.max_energy_drift = std::max(traj.summary.max_energy_drift, e0 > 0.0 ? de / e0 : de);
    traj.summary.max_constraint = std::max(traj.summary.max_constraint, std::abs(st.f_value));
    const double pn = std::sqrt(dot(st.p, st.p));
    if (pn > 0.0) {
      traj.summary.max_tangency = std::max(traj.summary.max_tangency, std::abs(st.normal_momentum) / pn);
    }
  };
  track(s);
  traj.states.push_back(s);
  for (int k = 1; k <= steps; ++k) {
    s = step(s, f, h_eff, form, mu);
    s.t = k * h_eff;
    track(s);
    if (k % record_every == 0 || k == steps) traj.states.push_back(s);
  }
  double r = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) r += (s.x[i] - x_start[i]) * (s.x[i] - x_start[i]);
  traj.summary.return_error = std::sqrt(r);
  return traj;
}

double curvature_relation_check(const SurfaceSpec& spec, const TrajectoryState& state, double mu) {
  const double p_norm = std::sqrt(dot(state.p, state.p));
  if (!(p_norm > 0.0)) throw ArgumentError("curvature relation needs nonzero momentum");
  const GeoJet geo = geometry_of(spec.levelset, spec.sdf, state.x, 2);
  const Point n = geo.normal_value();
  Point t = state.p;
  for (double& v : t) v /= p_norm;
  const double kappa = normal_curvature(geo, t);
  const double s = classical_S(geo, state.p, mu);
  const double energy = p_norm * p_norm / (2.0 * mu);
  double r = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double a = -2.0 * n[i] * s;
    const double b = -2.0 * n[i] * energy * kappa;
    r += (a - b) * (a - b);
  }
  return std::sqrt(r);
}

}  // namespace geoaudit
