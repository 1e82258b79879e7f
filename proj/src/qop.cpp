#include "geoaudit/qop.hpp"

#include <cmath>
#include <string>

namespace geoaudit {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require_order(const RJet& field, int needed, const char* what) {
  if (field.order() < needed) {
    throw OrderError(std::string(what) + " carries order " + std::to_string(field.order()) + ", operator needs " +
                     std::to_string(needed));
  }
}

void require_input(const CJet& psi, int consumed, const char* op) {
  if (psi.order() < consumed) {
    throw OrderError(std::string(op) + " consumes " + std::to_string(consumed) + " orders, input has " +
                     std::to_string(psi.order()));
  }
}

}  // namespace

CJet tangential_derivative(const CJet& u, const GeoJet& geo, int axis) {
  require_input(u, 1, "tangential derivative");
  const int d = geo.dim();
  require_order(geo.normal(0), u.order() - 1, "normal");
  CJet along(d, u.order() - 1);
  for (int j = 0; j < d; ++j) along += lower(u, j) * geo.normal(j);
  return lower(u, axis) - along * geo.normal(axis);
}

std::vector<CJet> apply_grad_S(const CJet& psi, const GeoJet& geo) {
  require_input(psi, 1, "grad_S");
  const int d = geo.dim();
  require_order(geo.normal(0), psi.order() - 1, "normal");
  std::vector<CJet> partials;
  for (int j = 0; j < d; ++j) partials.push_back(lower(psi, j));
  CJet along(d, psi.order() - 1);
  for (int j = 0; j < d; ++j) along += partials[j] * geo.normal(j);
  std::vector<CJet> out;
  for (int i = 0; i < d; ++i) out.push_back(partials[i] - along * geo.normal(i));
  return out;
}

CJet apply_laplace_beltrami(const CJet& psi, const GeoJet& geo) {
  require_input(psi, 2, "Laplace-Beltrami");
  const auto grad = apply_grad_S(psi, geo);
  CJet out(geo.dim(), psi.order() - 2);
  for (int i = 0; i < geo.dim(); ++i) out += tangential_derivative(grad[i], geo, i);
  return out;
}

CJet apply_p_component(const CJet& psi, const GeoJet& geo, const OperatorParams& params, int axis,
                       MomentumKind kind) {
  require_input(psi, 1, "momentum");
  const cd factor = -kI * params.hbar;
  switch (kind) {
    case MomentumKind::ambient:
      return lower(psi, axis) * factor;
    case MomentumKind::tangential_only:
      return tangential_derivative(psi, geo, axis) * factor;
    case MomentumKind::geometric:
      break;
  }
  const RJet& m = geo.mean_curvature();
  require_order(m, psi.order() - 1, "mean curvature");
  const RJet coeff = (m * geo.normal(axis)) * 0.5;
  return (tangential_derivative(psi, geo, axis) + psi * coeff) * factor;
}

std::vector<CJet> apply_p(const CJet& psi, const GeoJet& geo, const OperatorParams& params, MomentumKind kind) {
  std::vector<CJet> out;
  for (int i = 0; i < geo.dim(); ++i) out.push_back(apply_p_component(psi, geo, params, i, kind));
  return out;
}

CJet apply_H(const CJet& psi, const GeoJet& geo, const OperatorParams& params, const RJet* extra_potential) {
  require_input(psi, 2, "Hamiltonian");
  const int out_order = psi.order() - 2;
  const RJet& m = geo.mean_curvature();
  const RJet& k = geo.k_invariant();
  require_order(m, out_order, "mean curvature");
  require_order(k, out_order, "K");
  const double h2 = params.hbar * params.hbar;
  RJet potential = (k * params.xi - m * m * params.eta) * (-h2 / (8.0 * params.mu));
  if (extra_potential != nullptr) {
    require_order(*extra_potential, out_order, "extra potential");
    potential += *extra_potential;
  }
  const CJet kinetic = apply_laplace_beltrami(psi, geo) * cd(-h2 / (2.0 * params.mu));
  return kinetic + psi * potential;
}

CJet apply_S_quantum(const CJet& psi, const GeoJet& geo, const OperatorParams& params) {
  require_input(psi, 2, "quantum S");
  if (!geo.sdf()) throw ArgumentError("quantum S requires a signed-distance levelset");
  const int d = geo.dim();
  require_order(geo.grad_normal(0, 0), psi.order() - 1, "grad n");
  const auto p_psi = apply_p(psi, geo, params);
  CJet out(d, psi.order() - 2);
  for (int i = 0; i < d; ++i) {
    CJet inner(d, psi.order() - 1);
    for (int j = 0; j < d; ++j) inner += p_psi[j] * geo.grad_normal(i, j);
    out += apply_p_component(inner, geo, params, i);
  }
  return out * cd(1.0 / (2.0 * params.mu));
}

std::vector<cd> residual_operational(const SurfaceSpec& spec, const ComplexExpr& psi, std::span<const double> x,
                                     const OperatorParams& params, const Expr* extra_potential,
                                     ResidualBudget budget) {
  params.validate();
  if (budget.psi_order < 4 || budget.f_order < 5) {
    throw OrderError("residual needs psi order >= 4 and f order >= 5");
  }
  if (!spec.sdf) throw ArgumentError("operational residual requires a signed-distance surface");
  if (psi.dim() != spec.dim) throw ArgumentError("wavefunction dimension does not match surface");

  const GeoJet geo = geometry_at(spec, x, budget.f_order);
  const CJet psi_jet = evaluate(psi, x, budget.psi_order);
  const cd psi0 = psi_jet.value();
  if (std::abs(psi0) < kMinAmplitude) throw SmallAmplitudeError("|psi(x)| below 1e-6; pick another point");

  std::optional<RJet> w;
  if (extra_potential != nullptr) {
    if (extra_potential->dim() != spec.dim) throw ArgumentError("potential dimension does not match surface");
    w = evaluate(*extra_potential, x, budget.psi_order);
  }
  const RJet* wp = w ? &*w : nullptr;

  const CJet h_psi = apply_H(psi_jet, geo, params, wp);
  const CJet s_psi = apply_S_quantum(psi_jet, geo, params);
  const cd inv_ih = 1.0 / (kI * params.hbar);

  std::vector<cd> r(spec.dim);
  for (int k = 0; k < spec.dim; ++k) {
    const CJet p_h = apply_p_component(h_psi, geo, params, k);
    const CJet h_p = apply_H(apply_p_component(psi_jet, geo, params, k), geo, params, wp);
    const cd commutator = (p_h.value() - h_p.value()) * inv_ih;
    const cd n_s = geo.normal(k).value() * s_psi.value();
    const cd s_n = apply_S_quantum(psi_jet * geo.normal(k), geo, params).value();
    r[k] = (commutator + n_s + s_n) / psi0;
  }
  return r;
}

}  // namespace geoaudit
