#include <doctest.h>

#include <cmath>

#include "geoaudit/geometry.hpp"

using namespace geoaudit;

TEST_CASE("sphere pole") {
  const SurfaceSpec s = builtin_surface("sphere", {{"r", 1.0}});
  const std::vector<double> x{0.0, 0.0, 1.0};
  const GeoJet g = geometry_at(s, x, 5);
  const Point n = g.normal_value();
  CHECK(n[2] == doctest::Approx(1.0));
  CHECK(g.mean_curvature().value() == doctest::Approx(-2.0));
  CHECK(g.k_invariant().value() == doctest::Approx(2.0));
  CHECK(std::abs(g.lap_mean().value()) <= 1e-12);
}

TEST_CASE("plane and cylinder") {
  const SurfaceSpec plane = builtin_surface("plane", {});
  const std::vector<double> xp{0.3, -0.2, 0.0};
  const GeoJet gp = geometry_at(plane, xp, 5);
  CHECK(gp.mean_curvature().value() == 0.0);
  CHECK(gp.k_invariant().value() == 0.0);
  for (double v : gp.grad_normal_value()) CHECK(v == 0.0);

  const SurfaceSpec cyl = builtin_surface("cylinder", {{"a", 1.0}});
  const std::vector<double> xc{1.0, 0.0, 0.0};
  const GeoJet gc = geometry_at(cyl, xc, 5);
  CHECK(gc.normal_value()[0] == doctest::Approx(1.0));
  CHECK(gc.mean_curvature().value() == doctest::Approx(-1.0));
  CHECK(gc.k_invariant().value() == doctest::Approx(1.0));
  CHECK(gc.lap_mean().value() == doctest::Approx(-1.0));
}

TEST_CASE("sdf invariants on sampled points") {
  for (const char* name : {"sphere", "cylinder", "torus"}) {
    const SurfaceSpec s = builtin_surface(name, {});
    for (const auto& x : sample_points(s, 10, 11)) {
      const GeoJet g = geometry_at(s, x, 4);
      const Point n = g.normal_value();
      const auto gn = g.grad_normal_value();
      double nn = 0.0;
      for (double v : n) nn += v * v;
      CHECK(std::abs(nn - 1.0) <= 1e-12);
      for (int i = 0; i < 3; ++i) {
        double gn_n = 0.0;
        for (int j = 0; j < 3; ++j) {
          CHECK(std::abs(gn[i * 3 + j] - gn[j * 3 + i]) <= 1e-10);
          gn_n += gn[i * 3 + j] * n[j];
        }
        CHECK(std::abs(gn_n) <= 1e-10);
      }
      CHECK(g.k_invariant().value() >= 0.0);
    }
  }
}

TEST_CASE("torus principal curvatures") {
  const double R0 = 2.0;
  const double a = 0.5;
  const SurfaceSpec t = builtin_surface("torus", {{"R0", R0}, {"a", a}});
  for (double v : {0.0, 0.7, 2.1, 3.0}) {
    const double u = 0.4;
    const double rho = R0 + a * std::cos(v);
    const std::vector<double> x{rho * std::cos(u), rho * std::sin(u), a * std::sin(v)};
    const GeoJet g = geometry_at(t, x, 3);
    const double k1 = std::cos(v) / rho;
    const double k2 = 1.0 / a;
    CHECK(g.mean_curvature().value() == doctest::Approx(-(k1 + k2)).epsilon(1e-12));
    CHECK(g.k_invariant().value() == doctest::Approx(k1 * k1 + k2 * k2).epsilon(1e-12));

    const Point n = g.normal_value();
    const std::vector<double> along_u{-std::sin(u), std::cos(u), 0.0};
    CHECK(std::abs(normal_curvature(g, along_u)) == doctest::Approx(std::abs(k1)).epsilon(1e-12));
    (void)n;
  }
}

TEST_CASE("analytic residual force") {
  OperatorParams p21{2.0, 1.0};
  const SurfaceSpec sphere = builtin_surface("sphere", {});
  for (const auto& x : sample_points(sphere, 5, 1)) {
    for (double v : residual_force_analytic(geometry_at(sphere, x, 5), p21)) CHECK(std::abs(v) <= 1e-12);
  }
  const SurfaceSpec cyl = builtin_surface("cylinder", {{"a", 1.0}});
  for (const auto& x : sample_points(cyl, 5, 1)) {
    const GeoJet g = geometry_at(cyl, x, 5);
    const auto F = residual_force_analytic(g, p21);
    const Point n = g.normal_value();
    for (int i = 0; i < 3; ++i) CHECK(F[i] == doctest::Approx(0.25 * n[i]).epsilon(1e-12));
  }
  const SurfaceSpec s4 = builtin_surface("sphere", {}, 4);
  for (const auto& x : sample_points(s4, 3, 2)) {
    const auto F = residual_force_analytic(geometry_at(s4, x, 5), p21);
    double norm = 0.0;
    for (double v : F) norm += v * v;
    CHECK(std::sqrt(norm) == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("normal curvature and classical S") {
  const SurfaceSpec sphere = builtin_surface("sphere", {});
  const std::vector<double> x{0.0, 0.0, 1.0};
  const GeoJet g = geometry_at(sphere, x, 3);
  const std::vector<double> t{1.0, 0.0, 0.0};
  CHECK(std::abs(normal_curvature(g, t)) == doctest::Approx(1.0));
  const std::vector<double> not_unit{2.0, 0.0, 0.0};
  CHECK_THROWS_AS(normal_curvature(g, not_unit), ArgumentError);

  const SurfaceSpec cyl = builtin_surface("cylinder", {{"a", 1.0}});
  const std::vector<double> xc{1.0, 0.0, 0.0};
  const std::vector<double> axial{0.0, 0.0, 1.0};
  CHECK(std::abs(normal_curvature(geometry_at(cyl, xc, 3), axial)) <= 1e-15);

  const SurfaceSpec circle = builtin_surface("circle", {{"r", 1.0}});
  const std::vector<double> xs{1.0, 0.0};
  const std::vector<double> ps{0.0, 1.0};
  const GeoJet gc = geometry_at(circle, xs, 3);
  CHECK(std::abs(classical_S(gc, ps, 1.0)) == doctest::Approx(0.5));
  const std::vector<double> zero{0.0, 0.0};
  CHECK(classical_S(gc, zero, 1.0) == 0.0);

  const SurfaceSpec plane = builtin_surface("plane", {});
  const std::vector<double> xp{0.1, 0.2, 0.0};
  const std::vector<double> pp{0.3, -1.0, 0.0};
  CHECK(classical_S(geometry_at(plane, xp, 3), pp, 1.0) == 0.0);
}

TEST_CASE("contract violations") {
  const SurfaceSpec sphere = builtin_surface("sphere", {});
  const std::vector<double> off{0.0, 0.0, 1.1};
  CHECK_THROWS_AS(geometry_at(sphere, off, 3), ArgumentError);
  const SurfaceSpec ell = builtin_surface("ellipsoid", {});
  const std::vector<double> x{1.0, 0.0, 0.0};
  const GeoJet g = geometry_at(ell, x, 5);
  CHECK_THROWS(g.lap_mean());
  CHECK_THROWS_AS(OperatorParams({0.0, 0.0, 1.0, 0.0}).validate(), ArgumentError);
}
