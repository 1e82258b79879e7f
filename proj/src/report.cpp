#include "geoaudit/report.hpp"

#include <cstdio>
#include <ostream>

namespace geoaudit {

using nlohmann::json;

namespace {

json complex_json(const std::complex<double>& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json complex_vec(const CVec& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back(complex_json(z));
  return arr;
}

// %.17g keeps CSV rows exactly reproducible.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const OperatorParams& p) {
  return json{{"xi", p.xi}, {"eta", p.eta}, {"hbar", p.hbar}, {"mu", p.mu}};
}

json to_json(const ValidationReport& r) {
  json j{{"surface", r.surface},
         {"samples", r.samples},
         {"seed", r.seed},
         {"max_abs_f", r.max_abs_f},
         {"max_chart_grid_residual", r.max_chart_grid_residual},
         {"min_area_element", r.min_area_element},
         {"passed", r.passed},
         {"failures", r.failures}};
  j["max_grad_deviation"] = r.max_grad_deviation ? json(*r.max_grad_deviation) : json(nullptr);
  return j;
}

json to_json(const ResidualReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json rs = json::array();
    for (std::size_t k = 0; k < s.r_operational.size(); ++k) {
      rs.push_back(s.accepted[k] ? complex_vec(s.r_operational[k]) : json(nullptr));
    }
    samples.push_back(json{{"index", s.index},
                           {"point", s.point},
                           {"F_analytic", s.f_analytic},
                           {"R_operational", rs},
                           {"abs_F", s.f_norm},
                           {"mismatch", s.mismatch},
                           {"spread", s.spread}});
  }
  return json{{"surface", r.surface},
              {"surface_params", r.surface_params},
              {"dim", r.dim},
              {"params", to_json(r.params)},
              {"psi", r.psi_labels},
              {"tolerances", {{"breakdown", r.tol.breakdown}, {"mismatch_gate", r.tol.mismatch_gate}}},
              {"samples", samples},
              {"summary",
               {{"max_mismatch", r.max_mismatch},
                {"max_abs_F", r.max_abs_f},
                {"max_spread", r.max_spread},
                {"consistent", r.consistent()},
                {"verdict", r.verdict()}}}};
}

json to_json(const NoFixReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json deltas = json::array();
    for (const auto& d : s.delta) deltas.push_back(d.empty() ? json(nullptr) : complex_vec(d));
    samples.push_back(json{{"index", s.index},
                           {"point", s.point},
                           {"expected_shift", s.expected},
                           {"delta", deltas},
                           {"delta_error", s.delta_error},
                           {"normal_delta", s.normal_delta},
                           {"tangential_F", s.tangential_f}});
  }
  return json{{"surface", r.surface},
              {"potential", r.potential},
              {"samples", samples},
              {"summary",
               {{"max_delta_error", r.max_delta_error},
                {"max_normal_delta", r.max_normal_delta},
                {"max_tangential_F", r.max_tangential_f},
                {"passed", r.passed()}}}};
}

json to_json(const HermiticityReport& r) {
  json defects = json::array();
  for (const auto& d : r.defects) {
    defects.push_back(json{{"operator", d.op}, {"defect", complex_vec(d.defect)}, {"max_abs", d.max_abs}});
  }
  json pairs = json::array();
  for (const auto& p : r.pairwise) {
    pairs.push_back(
        json{{"a", p.a}, {"b", p.b}, {"difference", complex_vec(p.difference)}, {"max_abs", p.max_abs}});
  }
  return json{{"surface", r.surface},
              {"surface_params", r.surface_params},
              {"resolution", r.resolution},
              {"params", to_json(r.params)},
              {"momentum", r.momentum},
              {"phi", r.phi_label},
              {"psi", r.psi_label},
              {"defects", defects},
              {"pairwise", pairs}};
}

json to_json(const TrajectorySummary& s) {
  return json{{"steps", s.steps},
              {"h", s.h},
              {"max_energy_drift", s.max_energy_drift},
              {"max_constraint", s.max_constraint},
              {"max_tangency", s.max_tangency},
              {"return_error", s.return_error}};
}

void write_residual_csv(std::ostream& os, const ResidualReport& r) {
  os << "point,abs_F,mismatch\n";
  for (const auto& s : r.samples) os << s.index << ',' << num(s.f_norm) << ',' << num(s.mismatch) << '\n';
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryState>& states) {
  if (states.empty()) return;
  const std::size_t d = states.front().x.size();
  os << "t";
  for (std::size_t i = 1; i <= d; ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= d; ++i) os << ",p" << i;
  os << ",E,f,n_dot_p\n";
  for (const auto& s : states) {
    os << num(s.t);
    for (double v : s.x) os << ',' << num(v);
    for (double v : s.p) os << ',' << num(v);
    os << ',' << num(s.energy) << ',' << num(s.f_value) << ',' << num(s.normal_momentum) << '\n';
  }
}

}  // namespace geoaudit
