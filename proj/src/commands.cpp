#include "geoaudit/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "geoaudit/report.hpp"

namespace geoaudit {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 7;
constexpr double kAutoProjectLimit = 1e-3;
constexpr double kEnergyBound = 1e-9;
constexpr double kConstraintBound = 1e-8;
constexpr double kTangencyBound = 1e-9;

Exec exec_of(const RunConfig& cfg) { return cfg.flag("serial", false) ? Exec::serial : Exec::parallel; }

std::uint64_t seed_of(const RunConfig& cfg) {
  const long long s = cfg.integer("seed", static_cast<long long>(kDefaultSeed));
  if (s < 0) throw ConfigError("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

int positive_int(const RunConfig& cfg, const std::string& key, int fallback) {
  const long long v = cfg.integer(key, fallback);
  if (v <= 0) throw ConfigError("'" + key + "' must be positive");
  return static_cast<int>(v);
}

double positive_number(const RunConfig& cfg, const std::string& key, double fallback) {
  const double v = cfg.number(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("'" + key + "' must be positive");
  return v;
}

json envelope(const RunConfig& cfg, std::uint64_t seed) {
  return json{{"tool", "geoaudit"}, {"command", cfg.command}, {"config", config_json(cfg)}, {"seed", seed}};
}

std::vector<WaveField> wavefields_of(const RunConfig& cfg, int dim) {
  if (cfg.psi.empty()) return default_wavefields(dim);
  std::vector<WaveField> out;
  for (const auto& text : cfg.psi) out.push_back(parse_wavefield(text, dim));
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

MomentumKind momentum_of(const std::string& name) {
  if (name == "geometric") return MomentumKind::geometric;
  if (name == "ambient") return MomentumKind::ambient;
  if (name == "tangential_only") return MomentumKind::tangential_only;
  throw ConfigError("unknown momentum '" + name + "' (geometric|ambient|tangential_only)");
}

ForceForm force_form_of(const std::string& name) {
  if (name == "projector") return ForceForm::projector;
  if (name == "weinberg") return ForceForm::weinberg;
  throw ConfigError("unknown force form '" + name + "' (projector|weinberg)");
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// A tangent direction at x: the first ambient axis that is not parallel to n, projected.
Point default_momentum(const Point& n) {
  for (std::size_t axis = 0; axis < n.size(); ++axis) {
    Point p(n.size(), 0.0);
    p[axis] = 1.0;
    const double nd = dot(n, p);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= nd * n[i];
    const double len = std::sqrt(dot(p, p));
    if (len > 0.5) {
      for (auto& v : p) v /= len;
      return p;
    }
  }
  return Point(n.size(), 0.0);
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CommandResult cmd_surface_validate(const RunConfig& cfg) {
  const SurfaceSpec spec = surface_from_config(cfg);
  const std::uint64_t seed = seed_of(cfg);
  const ValidationReport rep = validate_surface(spec, positive_int(cfg, "samples", 50), seed);
  CommandResult out;
  out.report = envelope(cfg, seed);
  out.report["result"] = to_json(rep);
  out.exit_code = rep.passed ? kExitOk : kExitFailed;
  return out;
}

CommandResult cmd_surface_inspect(const RunConfig& cfg) {
  const SurfaceSpec spec = surface_from_config(cfg);
  const std::uint64_t seed = seed_of(cfg);
  const auto points = sample_points(spec, positive_int(cfg, "samples", 5), seed);
  const int budget = spec.sdf ? 5 : 3;
  json rows = json::array();
  for (const auto& x : points) {
    const GeoJet geo = geometry_at(spec, x, budget);
    json row{{"point", x},
             {"normal", geo.normal_value()},
             {"grad_normal", geo.grad_normal_value()},
             {"M", geo.mean_curvature().value()},
             {"K", geo.k_invariant().value()}};
    if (geo.has_lap_mean()) {
      Point gm;
      for (int l = 0; l < spec.dim; ++l) gm.push_back(geo.grad_mean(l).value());
      row["grad_M"] = gm;
      row["lap_M"] = geo.lap_mean().value();
    }
    rows.push_back(std::move(row));
  }
  CommandResult out;
  out.report = envelope(cfg, seed);
  out.report["result"] = json{{"surface", spec.name},
                              {"dim", spec.dim},
                              {"sdf", spec.sdf},
                              {"levelset", spec.levelset.str()},
                              {"surface_params", spec.params},
                              {"points", rows}};
  return out;
}

CommandResult cmd_ehrenfest(const RunConfig& cfg) {
  const SurfaceSpec spec = surface_from_config(cfg);
  if (!spec.sdf) throw ConfigError("ehrenfest needs a signed-distance levelset; '" + spec.name + "' is not one");
  const OperatorParams params = params_from_config(cfg);
  const std::uint64_t seed = seed_of(cfg);
  AuditTolerances tol;
  tol.breakdown = positive_number(cfg, "tol", tol.breakdown);
  tol.mismatch_gate = positive_number(cfg, "gate", tol.mismatch_gate);
  const auto psis = wavefields_of(cfg, spec.dim);
  const auto points = sample_points(spec, positive_int(cfg, "samples", 50), seed);
  std::optional<Expr> potential;
  if (cfg.has("potential")) potential = parse_expr(cfg.text("potential"), spec.dim);

  const ResidualReport rep = ehrenfest_audit(spec, params, psis, points, tol, exec_of(cfg));
  CommandResult out;
  out.report = envelope(cfg, seed);
  out.report["result"] = to_json(rep);
  out.exit_code = rep.consistent() ? kExitOk : kExitFailed;
  if (potential) {
    const NoFixReport nf = no_fix_check(spec, params, *potential, psis, points, exec_of(cfg));
    out.report["no_fix"] = to_json(nf);
    if (!nf.passed()) out.exit_code = kExitFailed;
  }
  std::ostringstream csv;
  write_residual_csv(csv, rep);
  out.csv = csv.str();
  return out;
}

namespace {

std::pair<WaveField, WaveField> trial_pair(const RunConfig& cfg, int dim, std::vector<std::string>& warnings) {
  const bool has_phi = cfg.has("phi");
  const bool has_psi = !cfg.psi.empty();
  if (cfg.psi.size() > 1) throw ConfigError("hermiticity takes a single psi");
  if (!has_phi) warnings.push_back("phi not given; using built-in trial phi = 1");
  if (!has_psi) warnings.push_back("psi not given; using built-in trial psi = x");
  return {parse_wavefield(has_phi ? cfg.text("phi") : "1", dim),
          parse_wavefield(has_psi ? cfg.psi.front() : "x", dim)};
}

CommandResult hermiticity_like(const RunConfig& cfg, bool orderings) {
  const SurfaceSpec spec = surface_from_config(cfg);
  const OperatorParams params = params_from_config(cfg);
  const int res = positive_int(cfg, "resolution", orderings ? 64 : 96);
  CommandResult out;
  const auto [phi, psi] = trial_pair(cfg, spec.dim, out.warnings);
  HermiticityReport rep;
  if (orderings) {
    rep = ordering_defects(spec, params, phi, psi, res, momentum_of(cfg.text("momentum", "geometric")), exec_of(cfg));
  } else {
    const auto ops = split_list(cfg.text("ops", "p,p_no_mean,S,H"));
    rep = operator_defects(spec, params, ops, phi, psi, res, exec_of(cfg));
  }
  out.report = envelope(cfg, seed_of(cfg));
  out.report["result"] = to_json(rep);
  out.report["trial_defaults_used"] = json{{"phi", !cfg.has("phi")}, {"psi", cfg.psi.empty()}};
  return out;
}

}  // namespace

CommandResult cmd_hermiticity(const RunConfig& cfg) { return hermiticity_like(cfg, false); }
CommandResult cmd_orderings(const RunConfig& cfg) { return hermiticity_like(cfg, true); }

CommandResult cmd_classical(const RunConfig& cfg) {
  const SurfaceSpec spec = surface_from_config(cfg);
  const std::uint64_t seed = seed_of(cfg);
  const double mu = positive_number(cfg, "mu", 1.0);
  const double T = positive_number(cfg, "T", 10.0);
  const double h = positive_number(cfg, "h", 1e-3);
  const ForceForm form = force_form_of(cfg.text("force_form", "projector"));
  const int record_every = positive_int(cfg, "record_every", 1);
  CommandResult out;

  Point x0 = cfg.has("x0") ? parse_vector(cfg.text("x0")) : sample_points(spec, 1, seed).front();
  if (static_cast<int>(x0.size()) != spec.dim) throw ConfigError("x0 must have " + std::to_string(spec.dim) + " components");
  const double f0 = spec.levelset.eval(x0);
  if (std::abs(f0) > kConstraintTol) {
    throw ConfigError("x0 is off the surface (|f| = " + std::to_string(std::abs(f0)) + ")");
  }
  const Point n = geometry_of(spec.levelset, spec.sdf, x0, 2).normal_value();
  Point p0 = cfg.has("p0") ? parse_vector(cfg.text("p0")) : default_momentum(n);
  if (p0.size() != x0.size()) throw ConfigError("p0 must have " + std::to_string(spec.dim) + " components");
  const double np = dot(n, p0);
  if (std::abs(np) > kAutoProjectLimit) {
    throw ConfigError("p0 is not tangential (|n.p0| = " + std::to_string(std::abs(np)) + ")");
  }
  if (std::abs(np) > kConstraintTol) {
    for (std::size_t i = 0; i < p0.size(); ++i) p0[i] -= np * n[i];
    out.warnings.push_back("p0 projected onto the tangent space (|n.p0| was " + std::to_string(std::abs(np)) + ")");
  }

  const Trajectory traj = run_trajectory(spec.levelset, x0, p0, T, h, form, mu, record_every);
  const TrajectorySummary& s = traj.summary;
  const bool ok = s.max_energy_drift <= kEnergyBound && s.max_constraint <= kConstraintBound &&
                  s.max_tangency <= kTangencyBound;
  out.exit_code = ok ? kExitOk : kExitFailed;
  out.report = envelope(cfg, seed);
  out.report["result"] = json{{"surface", spec.name},
                              {"dim", spec.dim},
                              {"force_form", cfg.text("force_form", "projector")},
                              {"x0", x0},
                              {"p0", p0},
                              {"T", T},
                              {"mu", mu},
                              {"summary", to_json(s)},
                              {"bounds",
                               {{"energy_drift", kEnergyBound},
                                {"constraint", kConstraintBound},
                                {"tangency", kTangencyBound}}},
                              {"within_bounds", ok},
                              {"final_state", {{"x", traj.states.back().x}, {"p", traj.states.back().p}}}};
  std::ostringstream csv;
  write_trajectory_csv(csv, traj.states);
  out.csv = csv.str();
  return out;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CommandResult res;
  try {
    if (cfg.command == "surface validate") {
      res = cmd_surface_validate(cfg);
    } else if (cfg.command == "surface inspect") {
      res = cmd_surface_inspect(cfg);
    } else if (cfg.command == "ehrenfest") {
      res = cmd_ehrenfest(cfg);
    } else if (cfg.command == "hermiticity") {
      res = cmd_hermiticity(cfg);
    } else if (cfg.command == "orderings") {
      res = cmd_orderings(cfg);
    } else if (cfg.command == "classical") {
      res = cmd_classical(cfg);
    } else {
      err << "error: unknown command '" << cfg.command << "'\n";
      return kExitBadInput;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: computation failed: " << e.what() << "\n";
    return kExitFailed;
  }

  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  res.report["warnings"] = res.warnings;
  res.report["exit_code"] = res.exit_code;
  res.report["generated_at"] = timestamp();
  const std::string text = res.report.dump(2) + "\n";
  if (cfg.has("out")) {
    std::ofstream f(cfg.text("out"));
    if (!f) {
      err << "error: cannot write '" << cfg.text("out") << "'\n";
      return kExitBadInput;
    }
    f << text;
  } else {
    out << text;
  }
  if (cfg.has("csv")) {
    if (res.csv.empty()) {
      err << "warning: '" << cfg.command << "' produces no table; --csv ignored\n";
    } else {
      std::ofstream f(cfg.text("csv"));
      if (!f) {
        err << "error: cannot write '" << cfg.text("csv") << "'\n";
        return kExitBadInput;
      }
      f << res.csv;
    }
  }
  return res.exit_code;
}

}  // namespace geoaudit
