#pragma once

#include <span>
#include <vector>

#include "geoaudit/geometry.hpp"

namespace geoaudit {

enum class ForceForm {
  projector,  // dp/dt = -n (p . grad n . p) / mu
  weinberg,   // dp/dt = -grad f (p . grad grad f . p) / (mu |grad f|^2)
};

inline constexpr double kConstraintTol = 1e-9;

struct TrajectoryState {
  double t = 0.0;
  Point x;
  Point p;
  double energy = 0.0;          // |p|^2 / 2mu
  double f_value = 0.0;         // f(x)
  double normal_momentum = 0.0; // n . p

  Point velocity(double mu) const;
};

/// Fills the diagnostics of (t, x, p) against the levelset.
TrajectoryState make_state(const Expr& f, double t, Point x, Point p, double mu);

Point classical_force(const Expr& f, std::span<const double> x, std::span<const double> p, double mu,
                      ForceForm form);

/// One RK4 step followed by projection: Newton on f along grad f for the
/// position, then p <- p - n (n . p) at the corrected point.
TrajectoryState step(const TrajectoryState& state, const Expr& f, double h, ForceForm form, double mu = 1.0);

struct TrajectorySummary {
  int steps = 0;
  double h = 0.0;                // effective step, T / steps
  double max_energy_drift = 0.0; // relative to E(0), absolute when E(0) = 0
  double max_constraint = 0.0;   // max |f(x)|
  double max_tangency = 0.0;     // max |n . p| / |p|
  double return_error = 0.0;     // |x(T) - x(0)|
};

struct Trajectory {
  std::vector<TrajectoryState> states;
  TrajectorySummary summary;
};

/// Fixed-step run over [0, T]; the step is shrunk to T / ceil(T / h) so the
/// run ends exactly at T. Every `record_every`-th state is stored (plus the last).
Trajectory run_trajectory(const Expr& f, Point x0, Point p0, double T, double h, ForceForm form,
                          double mu = 1.0, int record_every = 1);

/// |(-2 n S) - (-2 n H kappa)| for a tangential state, kappa the normal
/// curvature along p / |p|.
double curvature_relation_check(const SurfaceSpec& spec, const TrajectoryState& state, double mu = 1.0);

}  // namespace geoaudit
