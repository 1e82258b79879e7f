#pragma once

#include <complex>
#include <span>
#include <vector>

#include "geoaudit/geometry.hpp"
#include "geoaudit/jet.hpp"

namespace geoaudit {

// Every operator here maps a complex jet of a wavefunction at a surface point
// to a lower-order jet at the same point. Output order = input order minus the
// derivative orders the operator consumes; geometry fields must carry at least
// the output order or OrderError is thrown (never silent truncation).

enum class MomentumKind {
  geometric,        // -i hbar (grad_S + M n / 2)
  tangential_only,  // -i hbar grad_S, the hermiticity-breaking variant
  ambient,          // -i hbar grad, bare ambient momentum
};

class SmallAmplitudeError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline constexpr double kMinAmplitude = 1e-6;

CJet tangential_derivative(const CJet& u, const GeoJet& geo, int axis);
std::vector<CJet> apply_grad_S(const CJet& psi, const GeoJet& geo);
CJet apply_laplace_beltrami(const CJet& psi, const GeoJet& geo);

CJet apply_p_component(const CJet& psi, const GeoJet& geo, const OperatorParams& params, int axis,
                       MomentumKind kind = MomentumKind::geometric);
std::vector<CJet> apply_p(const CJet& psi, const GeoJet& geo, const OperatorParams& params,
                          MomentumKind kind = MomentumKind::geometric);

/// -(hbar^2/2mu) lap_LB psi + (V_G + W) psi with V_G = -(hbar^2/8mu)(xi K - eta M^2).
/// `extra_potential` is an optional jet of W at the same point.
CJet apply_H(const CJet& psi, const GeoJet& geo, const OperatorParams& params,
             const RJet* extra_potential = nullptr);

/// (1/2mu) sum_ij p_i (n_ij p_j psi); needs an sdf so that n_ij is symmetric.
CJet apply_S_quantum(const CJet& psi, const GeoJet& geo, const OperatorParams& params);

struct ResidualBudget {
  int psi_order = 4;
  int f_order = 5;
};

/// R_k = [ (1/i hbar)(p_k H - H p_k) psi + n_k S psi + S(n_k psi) ](x) / psi(x).
/// `extra_potential`, when given, is added to H.
std::vector<std::complex<double>> residual_operational(const SurfaceSpec& spec, const ComplexExpr& psi,
                                                       std::span<const double> x, const OperatorParams& params,
                                                       const Expr* extra_potential = nullptr,
                                                       ResidualBudget budget = {});

}  // namespace geoaudit
