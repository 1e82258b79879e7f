#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoaudit/expr.hpp"
#include "geoaudit/parallel.hpp"

namespace geoaudit {

using Point = std::vector<double>;

/// Parametrization of (part of) a hypersurface. Periodic axes are half-open
/// [lo, hi); non-periodic axes are integrated with Gauss-Legendre nodes, which
/// never touch the endpoints.
struct Chart {
  int param_dim = 0;
  std::vector<Expr> map;  // one expression per ambient coordinate, over param_dim variables
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<bool> periodic;
  Expr area_element;  // sqrt(det g) of the induced metric

  Point point_at(std::span<const double> u) const;
  void check() const;
};

struct SurfaceSpec {
  std::string name;
  int dim = 0;
  Expr levelset;
  bool sdf = false;  // |grad f| == 1 in a neighborhood of the surface
  std::vector<Chart> charts;
  std::map<std::string, double> params;
};

/// Builtin catalog: plane, circle, sphere, cylinder, torus, ellipsoid.
/// `dim` = 0 selects the natural dimension (2 for circle, 3 otherwise).
SurfaceSpec builtin_surface(std::string_view name, const std::map<std::string, double>& params, int dim = 0);

/// Levelset given as text with user-declared charts; validated only on request.
SurfaceSpec custom_surface(std::string name, Expr levelset, bool sdf, std::vector<Chart> charts);

struct ValidationReport {
  std::string surface;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_abs_f = 0.0;
  double max_chart_grid_residual = 0.0;
  std::optional<double> max_grad_deviation;  // only for sdf surfaces
  double min_area_element = 0.0;
  bool passed = false;
  std::vector<std::string> failures;
};

inline constexpr double kSurfaceTol = 1e-10;
inline constexpr double kSdfProbeOffset = 0.05;

ValidationReport validate_surface(const SurfaceSpec& spec, int n_samples, std::uint64_t seed);

/// Uniform parameter draws mapped through the charts; deterministic per seed.
std::vector<Point> sample_points(const SurfaceSpec& spec, int count, std::uint64_t seed);

struct QuadratureNode {
  Point x;
  Point u;
  int chart = 0;
  double weight = 0.0;  // rule weight times area element
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

std::vector<QuadratureNode> quadrature_nodes(const SurfaceSpec& spec, int resolution);

using NodeIntegrand = std::function<std::complex<double>(const QuadratureNode&)>;

/// Chart-wise tensor quadrature of `integrand` weighted by the area element.
std::complex<double> integrate(const SurfaceSpec& spec, const NodeIntegrand& integrand, int resolution,
                               Exec exec = Exec::parallel);
double integrate(const SurfaceSpec& spec, const Expr& ambient_integrand, int resolution,
                 Exec exec = Exec::parallel);

/// <phi, psi> = integral of conj(phi) * psi dA.
std::complex<double> inner_product(const SurfaceSpec& spec, const ComplexExpr& phi, const ComplexExpr& psi,
                                   int resolution, Exec exec = Exec::parallel);

/// Sums values[i] * nodes[i].weight in index order.
std::complex<double> weighted_sum(const std::vector<QuadratureNode>& nodes,
                                  std::span<const std::complex<double>> values);

}  // namespace geoaudit
