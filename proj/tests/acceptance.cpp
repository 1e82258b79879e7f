// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "geoaudit/audit.hpp"
#include "geoaudit/classical.hpp"
#include "geoaudit/jet.hpp"
#include "random_expr.hpp"

using namespace geoaudit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const OperatorParams kPresets[] = {{0.0, 0.0}, {0.0, 1.0}, {2.0, 1.0}};

Outcome two_route_agreement() {
  double worst = 0.0;
  for (const char* name : {"sphere", "cylinder", "torus"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    const auto pts = sample_points(s, 50, 7);
    for (const auto& p : kPresets) {
      worst = std::max(worst, ehrenfest_audit(s, p, default_wavefields(3), pts).max_mismatch);
    }
  }
  return {worst <= 1e-8, "max relative |R - F| = " + fmt("%.3g", worst)};
}

Outcome sphere_exception() {
  const SurfaceSpec s3 = builtin_surface("sphere", {{"r", 1.0}}, 3);
  const SurfaceSpec s4 = builtin_surface("sphere", {{"r", 1.0}}, 4);
  const double f3 = ehrenfest_audit(s3, {2, 1}, default_wavefields(3), sample_points(s3, 50, 7)).max_abs_f;
  const double f4 = ehrenfest_audit(s4, {2, 1}, default_wavefields(4), sample_points(s4, 50, 7)).max_abs_f;
  return {f3 <= 1e-9 && f4 > 1e-3, "N=3 max|F| = " + fmt("%.3g", f3) + ", N=4 max|F| = " + fmt("%.6g", f4)};
}

Outcome breakdown_witness() {
  const SurfaceSpec cyl = builtin_surface("cylinder", {{"a", 1.0}});
  const ResidualReport rc = ehrenfest_audit(cyl, {2, 1, 1, 1}, default_wavefields(3), sample_points(cyl, 50, 7));
  double dev = 0.0;
  for (const auto& s : rc.samples) dev = std::max(dev, std::abs(s.f_norm - 0.25));
  const SurfaceSpec torus = builtin_surface("torus", {{"R0", 2.0}, {"a", 0.5}});
  double weakest = INFINITY;
  for (const auto& p : kPresets) {
    weakest = std::min(weakest, ehrenfest_audit(torus, p, default_wavefields(3), sample_points(torus, 50, 7)).max_abs_f);
  }
  return {dev <= 1e-9 && weakest > 1e-3,
          "cylinder max||F| - 0.25| = " + fmt("%.3g", dev) + ", torus min over presets of max|F| = " + fmt("%.4g", weakest)};
}

Outcome multiplicativity() {
  double worst = 0.0;
  for (const char* name : {"cylinder", "torus"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    auto psis = default_wavefields(3);
    const Expr chi = parse_expr("x*y+3", 3);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& w = psis[k];
      psis.push_back({w.label + " + f*chi", ComplexExpr(w.psi.re + s.levelset * chi, w.psi.im + s.levelset * chi)});
    }
    for (const auto& p : kPresets) {
      const ResidualReport r = ehrenfest_audit(s, p, psis, sample_points(s, 20, 3));
      worst = std::max(worst, r.max_spread);
    }
  }
  return {worst <= 1e-8, "max spread across 6 wavefields (3 extended off-surface) = " + fmt("%.3g", worst)};
}

Outcome no_fix() {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const auto pts = sample_points(torus, 20, 7);
  Outcome o;
  double delta = 0.0, normal = 0.0, tangential = 0.0;
  for (const char* w : {"x", "x*y+z^2", "1/sqrt(x^2+y^2)"}) {
    const NoFixReport r = no_fix_check(torus, {2, 1}, parse_expr(w, 3), default_wavefields(3), pts);
    o.pass = o.pass && r.passed();
    delta = std::max(delta, r.max_delta_error);
    normal = std::max(normal, r.max_normal_delta);
    tangential = std::max(tangential, r.max_tangential_f);
  }
  o.detail = "shift error " + fmt("%.3g", delta) + ", |n.shift| " + fmt("%.3g", normal) + ", tangential F " +
             fmt("%.3g", tangential);
  return o;
}

Outcome hermiticity() {
  const WaveField x{"x", ComplexExpr(parse_expr("x", 3))};
  const WaveField one{"1", ComplexExpr(Expr::constant(1.0, 3))};
  const WaveField a{"sin(x+2*y)", ComplexExpr(parse_expr("sin(x+2*y)", 3), parse_expr("0.5*z", 3))};
  const WaveField b{"x^2-z+2", ComplexExpr(parse_expr("x^2-z+2", 3), parse_expr("x*y", 3))};
  double worst = 0.0;
  for (const char* name : {"sphere", "torus"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    for (const auto& p : kPresets) {
      for (const auto& pair : {std::make_pair(x, one), std::make_pair(a, b)}) {
        const HermiticityReport r = operator_defects(s, p, {"p", "S", "H"}, pair.first, pair.second, 96);
        for (const auto& d : r.defects) worst = std::max(worst, d.max_abs);
      }
    }
  }
  const SurfaceSpec torus = builtin_surface("torus", {});
  const double bare = operator_defects(torus, {}, {"p_no_mean"}, x, one, 96).defect("p_no_mean").max_abs;
  return {worst <= 1e-8 && bare >= 1e-3,
          "max p/S/H defect = " + fmt("%.3g", worst) + ", p without M n/2 defect = " + fmt("%.4g", bare)};
}

Outcome ordering_lab() {
  const SurfaceSpec ell = builtin_surface("ellipsoid", {{"a", 1.0}, {"b", 1.5}, {"c", 2.0}});
  const WaveField one{"1", ComplexExpr(Expr::constant(1.0, 3))};
  const WaveField x{"x", ComplexExpr(parse_expr("x", 3))};
  const HermiticityReport r = ordering_defects(ell, {}, one, x, 64);
  const double raw = r.defect("weinberg_raw").max_abs;
  double sym = 0.0;
  for (const char* op : {"oo1", "oo2", "oo3"}) sym = std::max(sym, r.defect(op).max_abs);
  double pair = 0.0;
  for (const auto& p : r.pairwise) pair = std::max(pair, p.max_abs);
  return {raw >= 1e-3 && sym <= 1e-8 && pair >= 1e-4, "weinberg_raw " + fmt("%.4g", raw) + ", max oo defect " +
                                                          fmt("%.3g", sym) + ", max pairwise " + fmt("%.4g", pair)};
}

Outcome classical_suite() {
  const SurfaceSpec circle = builtin_surface("circle", {{"r", 1.0}});
  const double ret =
      run_trajectory(circle.levelset, {1.0, 0.0}, {0.0, 1.0}, 2 * M_PI, 1e-3, ForceForm::projector).summary.return_error;

  double energy = 0.0, constraint = 0.0, tangency = 0.0;
  for (const char* name : {"sphere", "cylinder", "torus", "ellipsoid"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    const Point x0 = sample_points(s, 1, 21).front();
    const RJet f = evaluate(s.levelset, x0, 1);
    Point p0{-f[2], f[1], 0.0};
    if (std::hypot(p0[0], p0[1]) < 1e-3) p0 = {0.0, -f[3], f[2]};
    const TrajectorySummary t = run_trajectory(s.levelset, x0, p0, 10.0, 1e-3, ForceForm::projector, 1.0, 1000).summary;
    energy = std::max(energy, t.max_energy_drift);
    constraint = std::max(constraint, t.max_constraint);
    tangency = std::max(tangency, t.max_tangency);
  }

  const SurfaceSpec ell = builtin_surface("ellipsoid", {});
  double force_gap = 0.0;
  double relation = 0.0;
  for (const auto& x : sample_points(ell, 20, 5)) {
    const RJet f = evaluate(ell.levelset, x, 1);
    const double g = std::sqrt(f[1] * f[1] + f[2] * f[2] + f[3] * f[3]);
    const Point n{f[1] / g, f[2] / g, f[3] / g};
    Point p{0.4, -0.9, 0.7};
    const double np = p[0] * n[0] + p[1] * n[1] + p[2] * n[2];
    for (int i = 0; i < 3; ++i) p[i] -= np * n[i];
    const Point a = classical_force(ell.levelset, x, p, 1.0, ForceForm::projector);
    const Point b = classical_force(ell.levelset, x, p, 1.0, ForceForm::weinberg);
    for (int i = 0; i < 3; ++i) force_gap = std::max(force_gap, std::abs(a[i] - b[i]));
  }
  for (const char* name : {"circle", "sphere", "torus"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    for (const auto& x : sample_points(s, 10, 6)) {
      const RJet f = evaluate(s.levelset, x, 1);
      const Point p = s.dim == 2 ? Point{-f[2], f[1]} : Point{-f[2], f[1], 0.0};
      relation = std::max(relation, curvature_relation_check(s, make_state(s.levelset, 0.0, x, p, 1.0)));
    }
  }
  const bool ok = ret <= 1e-6 && energy <= 1e-9 && constraint <= 1e-8 && tangency <= 1e-9 && force_gap <= 1e-10 &&
                  relation <= 1e-10;
  return {ok, "return " + fmt("%.2g", ret) + ", drifts E/f/n.p " + fmt("%.2g", energy) + "/" + fmt("%.2g", constraint) +
                  "/" + fmt("%.2g", tangency) + ", force gap " + fmt("%.2g", force_gap) + ", curvature relation " +
                  fmt("%.2g", relation)};
}

Outcome jet_engine() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> coord(-0.6, 0.6);
  double fd_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const Expr e = testing::random_expr(rng, dim, 4);
    std::vector<double> x(dim);
    for (auto& v : x) v = coord(rng);
    const RJet j = evaluate(e, x, 1);
    for (int a = 0; a < dim; ++a) {
      const double h = 1e-5;
      std::vector<double> up = x, dn = x;
      up[a] += h;
      dn[a] -= h;
      const double fd = (e.eval(up) - e.eval(dn)) / (2 * h);
      fd_err = std::max(fd_err, std::abs(fd - j[1 + a]) / std::max(1.0, std::abs(j[1 + a])));
    }
  }
  double identity_err = 0.0;
  const std::vector<double> x{0.1, -0.2, 0.3};
  for (int trial = 0; trial < 10; ++trial) {
    const RJet g = evaluate(testing::random_expr(rng, 3, 3), x, 5);
    const RJet h = evaluate(testing::random_expr(rng, 3, 3), x, 5);
    for (int a = 0; a < 3; ++a) {
      const RJet lhs = lower(g * h, a);
      const RJet rhs = lower(g, a) * h.truncated(4) + g.truncated(4) * lower(h, a);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        identity_err = std::max(identity_err, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(lhs[i])));
      }
      for (int b = 0; b < 3; ++b) {
        const RJet ab = lower(lower(g, a), b);
        const RJet ba = lower(lower(g, b), a);
        for (std::size_t i = 0; i < ab.size(); ++i) {
          identity_err = std::max(identity_err, std::abs(ab[i] - ba[i]) / std::max(1.0, std::abs(ab[i])));
        }
      }
    }
  }
  return {fd_err <= 1e-6 && identity_err <= 1e-13,
          "finite-difference rel error " + fmt("%.2g", fd_err) + ", Leibniz/commutation " + fmt("%.2g", identity_err)};
}

}  // namespace

int main() {
  configure_threads_from_env();
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"two-route residual agreement", two_route_agreement},
      {"sphere exception", sphere_exception},
      {"breakdown witness", breakdown_witness},
      {"multiplicativity and extension independence", multiplicativity},
      {"no-fix theorem", no_fix},
      {"hermiticity", hermiticity},
      {"ordering lab", ordering_lab},
      {"classical suite", classical_suite},
      {"jet engine", jet_engine},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s; %.1fs)\n", index++, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
