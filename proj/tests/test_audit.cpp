#include <doctest.h>

#include <cmath>

#include "geoaudit/audit.hpp"

using namespace geoaudit;

namespace {

const OperatorParams kPresets[] = {{0.0, 0.0}, {0.0, 1.0}, {2.0, 1.0}};

}  // namespace

TEST_CASE("sphere holds, cylinder breaks down") {
  const SurfaceSpec sphere = builtin_surface("sphere", {{"r", 1.0}});
  const auto psis = default_wavefields(3);
  const ResidualReport rs = ehrenfest_audit(sphere, {2.0, 1.0}, psis, sample_points(sphere, 20, 7));
  CHECK(rs.consistent());
  CHECK(rs.verdict() == "ehrenfest_holds");
  CHECK(rs.max_abs_f <= 1e-9);

  const SurfaceSpec cyl = builtin_surface("cylinder", {{"a", 1.0}});
  const ResidualReport rc = ehrenfest_audit(cyl, {2.0, 1.0}, psis, sample_points(cyl, 20, 7));
  CHECK(rc.consistent());
  CHECK(rc.verdict() == "breakdown");
  for (const auto& s : rc.samples) CHECK(std::abs(s.f_norm - 0.25) <= 1e-9);
}

TEST_CASE("torus presets all break down and both routes agree") {
  const SurfaceSpec torus = builtin_surface("torus", {{"R0", 2.0}, {"a", 0.5}});
  const auto pts = sample_points(torus, 10, 7);
  for (const auto& p : kPresets) {
    const ResidualReport r = ehrenfest_audit(torus, p, default_wavefields(3), pts);
    CHECK(r.max_mismatch <= 1e-8);
    CHECK(r.max_abs_f > 1e-3);
  }
}

TEST_CASE("four-dimensional sphere does not satisfy the theorem") {
  const SurfaceSpec s4 = builtin_surface("sphere", {{"r", 1.0}}, 4);
  const ResidualReport r = ehrenfest_audit(s4, {2.0, 1.0}, default_wavefields(4), sample_points(s4, 8, 7));
  CHECK(r.consistent());
  CHECK(r.max_abs_f == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(r.verdict() == "breakdown");
}

TEST_CASE("no-fix theorem") {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const auto pts = sample_points(torus, 6, 5);
  const auto psis = default_wavefields(3);
  const NoFixReport zero = no_fix_check(torus, {2.0, 1.0}, Expr::constant(0.0, 3), psis, pts);
  CHECK(zero.passed());
  CHECK(zero.max_delta_error <= 1e-12);
  for (const auto& s : zero.samples) {
    for (double v : s.expected) CHECK(v == 0.0);
  }

  const NoFixReport wx = no_fix_check(torus, {2.0, 1.0}, parse_expr("x", 3), psis, pts);
  CHECK(wx.passed());
  const NoFixReport radial = no_fix_check(torus, {2.0, 1.0}, parse_expr("1/sqrt(x^2+y^2)+z^2", 3), psis, pts);
  CHECK(radial.passed());
  CHECK(radial.max_normal_delta <= 1e-10);
  CHECK_THROWS_AS(no_fix_check(torus, {0.0, 0.0}, parse_expr("x", 3), psis, pts), ArgumentError);
}

TEST_CASE("hermiticity defects") {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const WaveField phi{"x", ComplexExpr(parse_expr("x", 3))};
  const WaveField one{"1", ComplexExpr(Expr::constant(1.0, 3))};
  const HermiticityReport r = operator_defects(torus, {2.0, 1.0}, {"p", "p_no_mean", "S", "H"}, phi, one, 64);
  CHECK(r.defect("p").max_abs <= 1e-8);
  CHECK(r.defect("S").max_abs <= 1e-8);
  CHECK(r.defect("H").max_abs <= 1e-8);
  CHECK(r.defect("p_no_mean").max_abs >= 1e-3);
  CHECK_THROWS(r.defect("nope"));

  // swapping the pair conjugates and negates the defect
  const HermiticityReport s = operator_defects(torus, {2.0, 1.0}, {"p_no_mean"}, one, phi, 64);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(s.defects[0].defect[k] + std::conj(r.defect("p_no_mean").defect[k])) <= 1e-12);
  }
  CHECK_THROWS_AS(operator_defects(torus, {}, {"q"}, phi, one, 32), ArgumentError);
}

TEST_CASE("ordering lab on the ellipsoid") {
  const SurfaceSpec ell = builtin_surface("ellipsoid", {{"a", 1.0}, {"b", 1.5}, {"c", 2.0}});
  const WaveField one{"1", ComplexExpr(Expr::constant(1.0, 3))};
  const WaveField x{"x", ComplexExpr(parse_expr("x", 3))};
  const HermiticityReport r = ordering_defects(ell, {}, one, x, 64);
  CHECK(r.defect("weinberg_raw").max_abs >= 1e-3);
  for (const char* op : {"oo1", "oo2", "oo3"}) CHECK(r.defect(op).max_abs <= 1e-8);
  double best = 0.0;
  for (const auto& pw : r.pairwise) best = std::max(best, pw.max_abs);
  CHECK(best >= 1e-4);
  CHECK_THROWS_AS(ordering_defects(ell, {}, one, x, 16), ArgumentError);
}
