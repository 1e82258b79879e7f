#pragma once

#include <optional>
#include <span>
#include <vector>

#include "geoaudit/jet.hpp"
#include "geoaudit/surfaces.hpp"

namespace geoaudit {

/// Physical constants and the (xi, eta) member of the Hamiltonian family.
struct OperatorParams {
  double xi = 0.0;
  double eta = 0.0;
  double hbar = 1.0;
  double mu = 1.0;

  void validate() const;
};

/// Extrinsic geometry at one point, every field a jet around that point.
///
/// For a signed-distance levelset n = grad f and all fields below exist once the
/// order budget allows it. For a general levelset n = grad f / |grad f|; only
/// n, grad n, M and K are exposed, K taken over the tangent block of grad n.
/// Field orders for a budget k on f: n k-1, grad n / M / K k-2,
/// grad M / hess n k-3, lap M k-4.
class GeoJet {
 public:
  int dim() const noexcept { return dim_; }
  int budget() const noexcept { return budget_; }
  bool sdf() const noexcept { return sdf_; }
  const Point& point() const noexcept { return point_; }

  const RJet& normal(int i) const;
  const RJet& grad_normal(int i, int j) const;  // d_j n_i
  const RJet& mean_curvature() const;           // M = -div n
  const RJet& k_invariant() const;              // K = grad n : grad n
  const RJet& grad_mean(int l) const;           // d_l M
  const RJet& hess_normal(int i, int j, int l) const;  // d_l d_j n_i
  const RJet& lap_mean() const;                 // lap M

  bool has_third_order() const noexcept { return !hess_n_.empty(); }
  bool has_lap_mean() const noexcept { return lap_m_.has_value(); }

  Point normal_value() const;
  std::vector<double> grad_normal_value() const;  // row-major, [i*dim + j] = d_j n_i

  friend GeoJet geometry_of(const Expr& f, bool sdf, std::span<const double> x, int order_budget);

 private:
  void require_sdf(const char* field) const;

  int dim_ = 0;
  int budget_ = 0;
  bool sdf_ = false;
  Point point_;
  std::vector<RJet> n_;
  std::vector<RJet> grad_n_;
  std::optional<RJet> m_;
  std::optional<RJet> k_;
  std::vector<RJet> grad_m_;
  std::vector<RJet> hess_n_;
  std::optional<RJet> lap_m_;
};

/// Geometry fields of the levelset `f` at an arbitrary point (no on-surface check).
GeoJet geometry_of(const Expr& f, bool sdf, std::span<const double> x, int order_budget);

/// Geometry at a surface point; rejects points with |f(x)| > 1e-10.
GeoJet geometry_at(const SurfaceSpec& spec, std::span<const double> x, int order_budget);

/// Closed-form Ehrenfest residual
///   F = -(hbar^2/4mu) [ n lap M + (2 - xi) T(A) + (1 - eta) M T(lap n) ],
/// where A_k = sum_ij (d_j n_i)(d_i d_j n_k) and T(v) = v - n (n.v) is the
/// tangential projection. Requires an sdf GeoJet with lap M.
std::vector<double> residual_force_analytic(const GeoJet& geo, const OperatorParams& params);

/// t^T (grad n) t for a unit tangent t.
double normal_curvature(const GeoJet& geo, std::span<const double> direction);

/// S = p^T (grad n) p / (2 mu).
double classical_S(const GeoJet& geo, std::span<const double> p, double mu);

}  // namespace geoaudit
