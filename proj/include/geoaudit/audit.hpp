#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "geoaudit/parallel.hpp"
#include "geoaudit/qop.hpp"

namespace geoaudit {

using CVec = std::vector<std::complex<double>>;

struct WaveField {
  std::string label;
  ComplexExpr psi;
};

/// exp(x)(1+0.3z), sin(x+2y), x^2-z+2, each padded with a zero imaginary part.
std::vector<WaveField> default_wavefields(int dim);

struct AuditTolerances {
  double breakdown = 1e-6;      // |F| above this means Ehrenfest breaks down
  double mismatch_gate = 1e-8;  // two-route disagreement above this is an inconsistency
};

struct ResidualSample {
  std::size_t index = 0;
  Point point;
  std::vector<double> f_analytic;
  std::vector<CVec> r_operational;  // one per wavefield; empty when rejected
  std::vector<bool> accepted;       // false where |psi(x)| < 1e-6
  double f_norm = 0.0;
  double mismatch = 0.0;  // max over psi of |R - F| / max(1, |F|)
  double spread = 0.0;    // max pairwise |R_a - R_b| across psi
};

struct ResidualReport {
  std::string surface;
  std::map<std::string, double> surface_params;
  int dim = 0;
  OperatorParams params;
  AuditTolerances tol;
  std::vector<std::string> psi_labels;
  std::vector<ResidualSample> samples;
  double max_mismatch = 0.0;
  double max_abs_f = 0.0;
  double max_spread = 0.0;

  bool consistent() const { return max_mismatch <= tol.mismatch_gate; }
  bool ehrenfest_holds() const { return max_abs_f <= tol.breakdown; }
  std::string verdict() const { return ehrenfest_holds() ? "ehrenfest_holds" : "breakdown"; }
};

ResidualReport ehrenfest_audit(const SurfaceSpec& spec, const OperatorParams& params,
                               const std::vector<WaveField>& psis, const std::vector<Point>& points,
                               AuditTolerances tol = {}, Exec exec = Exec::parallel);

struct NoFixSample {
  std::size_t index = 0;
  Point point;
  std::vector<double> expected;  // -(grad W - n (n . grad W))
  std::vector<CVec> delta;       // R_{H+W} - R_H per wavefield
  double delta_error = 0.0;
  double normal_delta = 0.0;     // |n . delta|
  double tangential_f = 0.0;     // |F - n (n . F)| of the unshifted residual, both routes
};

struct NoFixReport {
  std::string surface;
  std::string potential;
  std::vector<NoFixSample> samples;
  double max_delta_error = 0.0;
  double max_normal_delta = 0.0;
  double max_tangential_f = 0.0;

  static constexpr double kDeltaTol = 1e-8;
  static constexpr double kNormalTol = 1e-10;
  static constexpr double kTangentialTol = 1e-9;
  bool passed() const {
    return max_delta_error <= kDeltaTol && max_normal_delta <= kNormalTol && max_tangential_f <= kTangentialTol;
  }
};

/// Adds W to the (2,1) Hamiltonian and checks the shift is the tangential
/// field -(grad W)_S while the unshifted residual stays normal.
NoFixReport no_fix_check(const SurfaceSpec& spec, const OperatorParams& params, const Expr& potential,
                         const std::vector<WaveField>& psis, const std::vector<Point>& points,
                         Exec exec = Exec::parallel);

struct DefectEntry {
  std::string op;
  CVec defect;  // per component <phi, A psi> - <A phi, psi>
  double max_abs = 0.0;
};

struct PairwiseEntry {
  std::string a;
  std::string b;
  CVec difference;  // per component <phi, (A - B) psi>
  double max_abs = 0.0;
};

struct HermiticityReport {
  std::string surface;
  std::map<std::string, double> surface_params;
  int resolution = 0;
  OperatorParams params;
  std::string momentum = "geometric";
  std::string phi_label;
  std::string psi_label;
  std::vector<DefectEntry> defects;
  std::vector<PairwiseEntry> pairwise;

  const DefectEntry& defect(const std::string& op) const;
};

/// Operators: "p", "p_no_mean" (p without the M n/2 term), "S", "H".
HermiticityReport operator_defects(const SurfaceSpec& spec, const OperatorParams& params,
                                   const std::vector<std::string>& ops, const WaveField& phi, const WaveField& psi,
                                   int resolution, Exec exec = Exec::parallel);

/// Candidates weinberg_raw, oo1, oo2, oo3 built from the levelset's own
/// coefficient fields; oo_m = (B_m + B_m^dagger)/2 with the adjoint realized by
/// quadrature transposition.
HermiticityReport ordering_defects(const SurfaceSpec& spec, const OperatorParams& params, const WaveField& phi,
                                   const WaveField& psi, int resolution,
                                   MomentumKind momentum = MomentumKind::geometric, Exec exec = Exec::parallel);

}  // namespace geoaudit
