#include "geoaudit/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "geoaudit/jet.hpp"

namespace geoaudit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double require_positive(const std::map<std::string, double>& params, const std::string& key,
                        double fallback = 1.0) {
  const double v = param(params, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ArgumentError("parameter '" + key + "' must be positive, got " + std::to_string(v));
  }
  return v;
}

void require_dim(std::string_view name, int dim, std::initializer_list<int> allowed) {
  if (std::find(allowed.begin(), allowed.end(), dim) == allowed.end()) {
    throw ArgumentError(std::string(name) + " is not available in dimension " + std::to_string(dim));
  }
}

// Helpers for writing chart and levelset expressions.
struct Vars {
  int dim;
  Expr operator[](int i) const { return Expr::variable(i, dim); }
  Expr c(double v) const { return Expr::constant(v, dim); }
};

Expr radius_expr(int dim) {
  Vars x{dim};
  Expr sum = pow(x[0], 2);
  for (int i = 1; i < dim; ++i) sum = sum + pow(x[i], 2);
  return sqrt(sum);
}

Chart make_chart(std::vector<Expr> map, std::vector<double> lo, std::vector<double> hi,
                 std::vector<bool> periodic, Expr area) {
  Chart c;
  c.param_dim = static_cast<int>(lo.size());
  c.map = std::move(map);
  c.lo = std::move(lo);
  c.hi = std::move(hi);
  c.periodic = std::move(periodic);
  c.area_element = std::move(area);
  return c;
}

Chart circle_chart(double r) {
  Vars t{1};
  return make_chart({r * cos(t[0]), r * sin(t[0])}, {0.0}, {kTwoPi}, {true}, t.c(r));
}

Chart sphere_chart(double r, int dim) {
  if (dim == 2) return circle_chart(r);
  if (dim == 3) {
    Vars u{2};  // polar angle, azimuth
    return make_chart({r * sin(u[0]) * cos(u[1]), r * sin(u[0]) * sin(u[1]), r * cos(u[0])},
                      {0.0, 0.0}, {std::numbers::pi, kTwoPi}, {false, true}, (r * r) * sin(u[0]));
  }
  Vars u{3};  // hyperspherical angles
  return make_chart({r * cos(u[0]), r * sin(u[0]) * cos(u[1]), r * sin(u[0]) * sin(u[1]) * cos(u[2]),
                     r * sin(u[0]) * sin(u[1]) * sin(u[2])},
                    {0.0, 0.0, 0.0}, {std::numbers::pi, std::numbers::pi, kTwoPi}, {false, false, true},
                    (r * r * r) * pow(sin(u[0]), 2) * sin(u[1]));
}

}  // namespace

Point Chart::point_at(std::span<const double> u) const {
  Point x(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) x[i] = map[i].eval(u);
  return x;
}

void Chart::check() const {
  if (param_dim < 1) throw ArgumentError("chart needs at least one parameter");
  if (static_cast<int>(lo.size()) != param_dim || static_cast<int>(hi.size()) != param_dim ||
      static_cast<int>(periodic.size()) != param_dim) {
    throw ArgumentError("chart domain does not match parameter dimension");
  }
  for (int k = 0; k < param_dim; ++k) {
    if (!(hi[k] > lo[k])) throw ArgumentError("chart domain axis is empty");
  }
  for (const Expr& m : map) {
    if (m.dim() != param_dim) throw ArgumentError("chart map expression has wrong parameter dimension");
  }
  if (!area_element.valid() || area_element.dim() != param_dim) {
    throw ArgumentError("chart area element missing or of wrong dimension");
  }
}

SurfaceSpec builtin_surface(std::string_view name, const std::map<std::string, double>& params, int dim) {
  SurfaceSpec s;
  s.name = std::string(name);
  s.params = params;
  if (name == "plane") {
    s.dim = dim == 0 ? 3 : dim;
    require_dim(name, s.dim, {2, 3, 4});
    s.levelset = Expr::variable(s.dim - 1, s.dim);
    s.sdf = true;
    const int pd = s.dim - 1;
    Vars u{pd};
    std::vector<Expr> map;
    for (int i = 0; i < pd; ++i) map.push_back(u[i]);
    map.push_back(u.c(0.0));
    s.charts.push_back(make_chart(std::move(map), std::vector<double>(pd, -1.0), std::vector<double>(pd, 1.0),
                                  std::vector<bool>(pd, false), u.c(1.0)));
  } else if (name == "circle") {
    s.dim = dim == 0 ? 2 : dim;
    require_dim(name, s.dim, {2});
    const double r = require_positive(params, "r");
    s.params["r"] = r;
    s.levelset = radius_expr(2) - r;
    s.sdf = true;
    s.charts.push_back(circle_chart(r));
  } else if (name == "sphere") {
    s.dim = dim == 0 ? 3 : dim;
    require_dim(name, s.dim, {2, 3, 4});
    const double r = require_positive(params, "r");
    s.params["r"] = r;
    s.levelset = radius_expr(s.dim) - r;
    s.sdf = true;
    s.charts.push_back(sphere_chart(r, s.dim));
  } else if (name == "cylinder") {
    s.dim = dim == 0 ? 3 : dim;
    require_dim(name, s.dim, {3});
    const double a = require_positive(params, "a");
    const double half = require_positive(params, "L");
    s.params["a"] = a;
    s.params["L"] = half;
    Vars x{3};
    s.levelset = sqrt(pow(x[0], 2) + pow(x[1], 2)) - a;
    s.sdf = true;
    Vars u{2};  // azimuth, height
    s.charts.push_back(make_chart({a * cos(u[0]), a * sin(u[0]), u[1]}, {0.0, -half}, {kTwoPi, half},
                                  {true, false}, u.c(a)));
  } else if (name == "torus") {
    s.dim = dim == 0 ? 3 : dim;
    require_dim(name, s.dim, {3});
    const double big = require_positive(params, "R0", 2.0);
    const double a = require_positive(params, "a", 0.5);
    if (a >= big) throw ArgumentError("torus requires a < R0");
    s.params["R0"] = big;
    s.params["a"] = a;
    Vars x{3};
    s.levelset = sqrt(pow(sqrt(pow(x[0], 2) + pow(x[1], 2)) - big, 2) + pow(x[2], 2)) - a;
    s.sdf = true;
    Vars u{2};  // toroidal angle, poloidal angle
    const Expr ring = big + a * cos(u[1]);
    s.charts.push_back(make_chart({ring * cos(u[0]), ring * sin(u[0]), a * sin(u[1])}, {0.0, 0.0},
                                  {kTwoPi, kTwoPi}, {true, true}, a * ring));
  } else if (name == "ellipsoid") {
    s.dim = dim == 0 ? 3 : dim;
    require_dim(name, s.dim, {3});
    const double a = require_positive(params, "a");
    const double b = require_positive(params, "b", 1.5);
    const double c = require_positive(params, "c", 2.0);
    s.params["a"] = a;
    s.params["b"] = b;
    s.params["c"] = c;
    Vars x{3};
    s.levelset = pow(x[0], 2) / (a * a) + pow(x[1], 2) / (b * b) + pow(x[2], 2) / (c * c) - 1.0;
    s.sdf = false;
    Vars u{2};
    const Expr st = sin(u[0]);
    const Expr area = st * sqrt((b * b * c * c) * pow(st, 2) * pow(cos(u[1]), 2) +
                                (a * a * c * c) * pow(st, 2) * pow(sin(u[1]), 2) +
                                (a * a * b * b) * pow(cos(u[0]), 2));
    s.charts.push_back(make_chart({a * st * cos(u[1]), b * st * sin(u[1]), c * cos(u[0])}, {0.0, 0.0},
                                  {std::numbers::pi, kTwoPi}, {false, true}, area));
  } else {
    throw ArgumentError("unknown surface '" + std::string(name) + "'");
  }
  return s;
}

SurfaceSpec custom_surface(std::string name, Expr levelset, bool sdf, std::vector<Chart> charts) {
  SurfaceSpec s;
  s.name = std::move(name);
  s.dim = levelset.dim();
  s.levelset = std::move(levelset);
  s.sdf = sdf;
  s.charts = std::move(charts);
  for (const Chart& c : s.charts) {
    c.check();
    if (static_cast<int>(c.map.size()) != s.dim) throw ArgumentError("chart map must have one entry per coordinate");
  }
  return s;
}

namespace {

struct ParamDraw {
  int chart;
  Point u;
};

std::vector<ParamDraw> draw_parameters(const SurfaceSpec& spec, int count, std::uint64_t seed) {
  if (spec.charts.empty()) throw ArgumentError("surface '" + spec.name + "' has no charts");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ParamDraw> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int ci = static_cast<int>(k % spec.charts.size());
    const Chart& c = spec.charts[ci];
    Point u(c.param_dim);
    for (int a = 0; a < c.param_dim; ++a) {
      double t = unit(rng);
      // keep non-periodic draws off the boundary (poles, chart edges)
      if (!c.periodic[a]) t = 1e-3 + (1.0 - 2e-3) * t;
      u[a] = c.lo[a] + (c.hi[a] - c.lo[a]) * t;
    }
    out.push_back({ci, std::move(u)});
  }
  return out;
}

double gradient_norm(const Expr& f, std::span<const double> x) {
  const RJet j = evaluate(f, x, 1);
  double s = 0.0;
  for (int i = 0; i < f.dim(); ++i) s += j[1 + i] * j[1 + i];
  return std::sqrt(s);
}

}  // namespace

std::vector<Point> sample_points(const SurfaceSpec& spec, int count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("sample count must be >= 1");
  std::vector<Point> pts;
  for (const auto& d : draw_parameters(spec, count, seed)) pts.push_back(spec.charts[d.chart].point_at(d.u));
  return pts;
}

ValidationReport validate_surface(const SurfaceSpec& spec, int n_samples, std::uint64_t seed) {
  ValidationReport rep;
  rep.surface = spec.name;
  rep.samples = n_samples;
  rep.seed = seed;
  rep.min_area_element = std::numeric_limits<double>::infinity();
  if (spec.charts.empty()) {
    rep.failures.push_back("surface has no charts");
    return rep;
  }
  try {
    double max_dev = 0.0;
    for (const auto& d : draw_parameters(spec, std::max(n_samples, 1), seed)) {
      const Chart& c = spec.charts[d.chart];
      const Point x = c.point_at(d.u);
      rep.max_abs_f = std::max(rep.max_abs_f, std::abs(spec.levelset.eval(x)));
      rep.min_area_element = std::min(rep.min_area_element, c.area_element.eval(d.u));
      if (spec.sdf) {
        const RJet j = evaluate(spec.levelset, x, 1);
        Point grad(spec.dim);
        for (int i = 0; i < spec.dim; ++i) grad[i] = j[1 + i];
        max_dev = std::max(max_dev, std::abs(gradient_norm(spec.levelset, x) - 1.0));
        for (double s : {-kSdfProbeOffset, kSdfProbeOffset}) {
          Point y = x;
          for (int i = 0; i < spec.dim; ++i) y[i] += s * grad[i];
          max_dev = std::max(max_dev, std::abs(gradient_norm(spec.levelset, y) - 1.0));
        }
      }
    }
    if (spec.sdf) rep.max_grad_deviation = max_dev;

    // f(map(u)) = 0 on a regular interior grid of every chart.
    constexpr int kGrid = 12;
    for (const Chart& c : spec.charts) {
      int total = 1;
      for (int a = 0; a < c.param_dim; ++a) total *= kGrid;
      Point u(c.param_dim);
      for (int k = 0; k < total; ++k) {
        int rem = k;
        for (int a = 0; a < c.param_dim; ++a) {
          const double t = (rem % kGrid + 0.5) / kGrid;
          rem /= kGrid;
          u[a] = c.lo[a] + (c.hi[a] - c.lo[a]) * t;
        }
        rep.max_chart_grid_residual =
            std::max(rep.max_chart_grid_residual, std::abs(spec.levelset.eval(c.point_at(u))));
        rep.min_area_element = std::min(rep.min_area_element, c.area_element.eval(u));
      }
    }
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("evaluation failed: ") + e.what());
  }

  if (!(rep.max_abs_f <= kSurfaceTol)) rep.failures.push_back("sample points leave the levelset");
  if (!(rep.max_chart_grid_residual <= kSurfaceTol)) rep.failures.push_back("chart grid leaves the levelset");
  if (rep.max_grad_deviation && !(*rep.max_grad_deviation <= kSurfaceTol)) {
    rep.failures.push_back("levelset flagged as signed distance but |grad f| != 1");
  }
  if (!(rep.min_area_element > 0.0)) rep.failures.push_back("area element is not positive");
  rep.passed = rep.failures.empty();
  return rep;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ArgumentError("Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<QuadratureNode> quadrature_nodes(const SurfaceSpec& spec, int resolution) {
  if (resolution < 4) throw ArgumentError("quadrature resolution must be >= 4 nodes per axis");
  if (spec.charts.empty()) throw ArgumentError("surface '" + spec.name + "' has no charts");
  std::vector<double> gl_x;
  std::vector<double> gl_w;
  gauss_legendre(resolution, gl_x, gl_w);

  std::vector<QuadratureNode> out;
  for (std::size_t ci = 0; ci < spec.charts.size(); ++ci) {
    const Chart& c = spec.charts[ci];
    std::vector<std::vector<double>> axis_u(c.param_dim);
    std::vector<std::vector<double>> axis_w(c.param_dim);
    for (int a = 0; a < c.param_dim; ++a) {
      const double len = c.hi[a] - c.lo[a];
      for (int k = 0; k < resolution; ++k) {
        if (c.periodic[a]) {
          axis_u[a].push_back(c.lo[a] + len * k / resolution);
          axis_w[a].push_back(len / resolution);
        } else {
          axis_u[a].push_back(c.lo[a] + 0.5 * len * (gl_x[k] + 1.0));
          axis_w[a].push_back(0.5 * len * gl_w[k]);
        }
      }
    }
    std::size_t total = 1;
    for (int a = 0; a < c.param_dim; ++a) total *= resolution;
    Point u(c.param_dim);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rem = k;
      double w = 1.0;
      for (int a = c.param_dim - 1; a >= 0; --a) {
        const std::size_t idx = rem % resolution;
        rem /= resolution;
        u[a] = axis_u[a][idx];
        w *= axis_w[a][idx];
      }
      QuadratureNode node;
      node.x = c.point_at(u);
      node.u = u;
      node.chart = static_cast<int>(ci);
      node.weight = w * c.area_element.eval(u);
      out.push_back(std::move(node));
    }
  }
  return out;
}

std::complex<double> weighted_sum(const std::vector<QuadratureNode>& nodes,
                                  std::span<const std::complex<double>> values) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += nodes[i].weight * values[i];
  return sum;
}

std::complex<double> integrate(const SurfaceSpec& spec, const NodeIntegrand& integrand, int resolution,
                               Exec exec) {
  const auto nodes = quadrature_nodes(spec, resolution);
  std::vector<std::complex<double>> values(nodes.size());
  for_each_index(nodes.size(), exec, [&](std::size_t i) { values[i] = integrand(nodes[i]); });
  return weighted_sum(nodes, values);
}

double integrate(const SurfaceSpec& spec, const Expr& ambient_integrand, int resolution, Exec exec) {
  if (ambient_integrand.dim() != spec.dim) throw ArgumentError("integrand dimension does not match surface");
  return integrate(
             spec, [&](const QuadratureNode& n) { return std::complex<double>(ambient_integrand.eval(n.x)); },
             resolution, exec)
      .real();
}

std::complex<double> inner_product(const SurfaceSpec& spec, const ComplexExpr& phi, const ComplexExpr& psi,
                                   int resolution, Exec exec) {
  if (phi.dim() != spec.dim || psi.dim() != spec.dim) {
    throw ArgumentError("wavefunction dimension does not match surface");
  }
  return integrate(
      spec,
      [&](const QuadratureNode& n) {
        const std::complex<double> a(phi.re.eval(n.x), phi.im.eval(n.x));
        const std::complex<double> b(psi.re.eval(n.x), psi.im.eval(n.x));
        return std::conj(a) * b;
      },
      resolution, exec);
}

}  // namespace geoaudit
