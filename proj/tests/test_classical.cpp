#include <doctest.h>

#include <cmath>

#include "geoaudit/classical.hpp"

using namespace geoaudit;

TEST_CASE("circle returns after one period") {
  const SurfaceSpec c = builtin_surface("circle", {{"r", 1.0}});
  const Trajectory t = run_trajectory(c.levelset, {1.0, 0.0}, {0.0, 1.0}, 2 * M_PI, 1e-3, ForceForm::projector);
  CHECK(t.summary.return_error <= 1e-6);
  CHECK(t.summary.max_energy_drift <= 1e-9);
}

TEST_CASE("plane motion is straight") {
  const SurfaceSpec plane = builtin_surface("plane", {});
  const Trajectory t = run_trajectory(plane.levelset, {0.0, 0.0, 0.0}, {0.3, -0.4, 0.0}, 2.0, 1e-2, ForceForm::projector);
  const auto& last = t.states.back();
  CHECK(std::abs(last.p[0] - 0.3) <= 1e-12);
  CHECK(std::abs(last.p[1] + 0.4) <= 1e-12);
  CHECK(last.x[0] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("zero momentum is stationary") {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const Trajectory t = run_trajectory(torus.levelset, {2.5, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, 0.1, ForceForm::weinberg);
  CHECK(t.summary.return_error == 0.0);
}

TEST_CASE("conservation over long runs") {
  const SurfaceSpec sphere = builtin_surface("sphere", {{"r", 1.0}});
  const Trajectory s = run_trajectory(sphere.levelset, {1.0, 0.0, 0.0}, {0.0, 0.6, 0.8}, 10.0, 1e-3, ForceForm::projector);
  CHECK(s.summary.max_energy_drift <= 1e-9);
  CHECK(s.summary.max_constraint <= 1e-8);
  CHECK(s.summary.max_tangency <= 1e-9);

  const SurfaceSpec torus = builtin_surface("torus", {{"R0", 2.0}, {"a", 0.5}});
  const double v = 0.9;
  const Point x0{(2.0 + 0.5 * std::cos(v)), 0.0, 0.5 * std::sin(v)};
  const Point p0{-0.6 * std::sin(v), 0.8, 0.6 * std::cos(v)};  // unit mix of the u and v directions
  const Trajectory t = run_trajectory(torus.levelset, x0, p0, 20.0, 1e-3, ForceForm::projector, 1.0, 100);
  CHECK(t.summary.max_constraint <= 1e-8);
  CHECK(t.summary.max_energy_drift <= 1e-9);
}

TEST_CASE("force forms agree for tangential momentum on the ellipsoid") {
  const SurfaceSpec ell = builtin_surface("ellipsoid", {});
  for (const auto& x : sample_points(ell, 10, 4)) {
    const RJet f = evaluate(ell.levelset, x, 1);
    Point n{f[1], f[2], f[3]};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& c : n) c /= len;
    Point p{0.3, -0.7, 0.5};
    const double np = p[0] * n[0] + p[1] * n[1] + p[2] * n[2];
    for (int i = 0; i < 3; ++i) p[i] -= np * n[i];
    const Point a = classical_force(ell.levelset, x, p, 1.0, ForceForm::projector);
    const Point b = classical_force(ell.levelset, x, p, 1.0, ForceForm::weinberg);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
  const Point x0 = sample_points(ell, 1, 9).front();
  const RJet f = evaluate(ell.levelset, x0, 1);
  Point p0{-f[2], f[1], 0.0};
  const Trajectory ta = run_trajectory(ell.levelset, x0, p0, 5.0, 1e-3, ForceForm::projector);
  const Trajectory tb = run_trajectory(ell.levelset, x0, p0, 5.0, 1e-3, ForceForm::weinberg);
  double diff = 0.0;
  for (std::size_t k = 0; k < ta.states.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      diff = std::max(diff, std::abs(ta.states[k].x[i] - tb.states[k].x[i]));
      diff = std::max(diff, std::abs(ta.states[k].p[i] - tb.states[k].p[i]));
    }
  }
  CHECK(diff <= 1e-8);
}

TEST_CASE("RK4 converges at fourth order") {
  const SurfaceSpec c = builtin_surface("circle", {{"r", 1.0}});
  auto err = [&](int steps) {
    const double T = 3.0;
    const Trajectory t = run_trajectory(c.levelset, {1.0, 0.0}, {0.0, 1.0}, T, T / steps, ForceForm::weinberg);
    const auto& s = t.states.back();
    return std::hypot(s.x[0] - std::cos(T), s.x[1] - std::sin(T));
  };
  const double e1 = err(32);
  const double e2 = err(64);
  const double ratio = e1 / e2;
  MESSAGE("error ratio 32->64 steps: " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("curvature relation") {
  const SurfaceSpec circle = builtin_surface("circle", {{"r", 1.0}});
  CHECK(curvature_relation_check(circle, make_state(circle.levelset, 0.0, {1.0, 0.0}, {0.0, 1.0}, 1.0)) <= 1e-12);
  const SurfaceSpec plane = builtin_surface("plane", {});
  CHECK(curvature_relation_check(plane, make_state(plane.levelset, 0.0, {0.1, 0.2, 0.0}, {1.0, 2.0, 0.0}, 1.0)) <=
        1e-15);
  const SurfaceSpec torus = builtin_surface("torus", {});
  for (const auto& x : sample_points(torus, 5, 3)) {
    const RJet f = evaluate(torus.levelset, x, 1);
    Point p{-f[2], f[1], 0.0};
    CHECK(curvature_relation_check(torus, make_state(torus.levelset, 0.0, x, p, 1.0)) <= 1e-10);
  }
}

TEST_CASE("bad starts are rejected") {
  const SurfaceSpec sphere = builtin_surface("sphere", {});
  CHECK_THROWS_AS(run_trajectory(sphere.levelset, {1.1, 0.0, 0.0}, {0.0, 1.0, 0.0}, 1.0, 0.01, ForceForm::projector),
                  ArgumentError);
  CHECK_THROWS_AS(run_trajectory(sphere.levelset, {1.0, 0.0, 0.0}, {0.1, 1.0, 0.0}, 1.0, 0.01, ForceForm::projector),
                  ArgumentError);
  CHECK_THROWS_AS(run_trajectory(sphere.levelset, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 1.0, -0.01, ForceForm::projector),
                  ArgumentError);
}
