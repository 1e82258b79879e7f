#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "geoaudit/commands.hpp"

using namespace geoaudit;
using nlohmann::json;

namespace {

RunConfig make(const std::string& command, std::map<std::string, std::string> values,
               std::vector<std::string> psi = {}) {
  RunConfig cfg;
  cfg.command = command;
  cfg.values = std::move(values);
  cfg.psi = std::move(psi);
  return cfg;
}

int run(const RunConfig& cfg, json* report = nullptr) {
  std::ostringstream out, err;
  const int rc = run_command(cfg, out, err);
  if (report && !out.str().empty()) *report = json::parse(out.str());
  return rc;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(GEOAUDIT_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config file parsing") {
  const RunConfig cfg = parse_config_text(
      "# comment\n[surface]\nsurface = torus\nR0 = 2\n[operator]\nxi = 2 # inline\neta = 1\n"
      "psi = x;y\npsi = 1\n[chart]\nmap = x1\n");
  CHECK(cfg.text("surface") == "torus");
  CHECK(cfg.number("R0", 0) == 2.0);
  CHECK(cfg.number("xi", 0) == 2.0);
  CHECK(cfg.psi.size() == 2);
  CHECK(cfg.charts.size() == 1);
  CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[chart]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(make("x", {{"seed", "abc"}}).integer("seed", 0), ConfigError);

  RunConfig over = cfg;
  apply_overrides(over, {{"xi", "0"}}, {"z"});
  CHECK(over.number("xi", 5) == 0.0);
  CHECK(over.psi == std::vector<std::string>{"z"});
}

TEST_CASE("surface validate exit codes") {
  CHECK(run(make("surface validate", {{"surface", "sphere"}, {"r", "1"}, {"dim", "3"}})) == 0);
  CHECK(run(make("surface validate", {{"surface", "torus"}, {"R0", "1"}, {"a", "1.5"}})) == 2);
  RunConfig bad = make("surface validate", {{"levelset", "x^2+y^2+z^2-1"}, {"dim", "3"}});
  bad.charts.push_back({"1.1*sin(x1)*cos(x2), sin(x1)*sin(x2), cos(x1)", "0.1, 0", "3.0, 6.283185307179586", "0, 1",
                        "sin(x1)"});
  CHECK(run(bad) == 1);
  bad.charts[0].map = "sin(x1)*cos(x2), sin(x1)*sin(x2), cos(x1)";
  CHECK(run(bad) == 0);
}

TEST_CASE("ehrenfest command") {
  json rep;
  CHECK(run(make("ehrenfest", {{"surface", "cylinder"}, {"a", "1"}, {"xi", "2"}, {"eta", "1"}, {"samples", "10"}}),
            &rep) == 0);
  CHECK(rep["result"]["summary"]["verdict"] == "breakdown");
  CHECK(rep["result"]["summary"]["max_abs_F"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep["seed"] == 7);
  CHECK(rep["config"]["surface"] == "cylinder");

  CHECK(run(make("ehrenfest", {{"surface", "sphere"}, {"r", "1"}, {"dim", "3"}, {"xi", "2"}, {"eta", "1"},
                               {"samples", "10"}}),
            &rep) == 0);
  CHECK(rep["result"]["summary"]["verdict"] == "ehrenfest_holds");

  CHECK(run(make("ehrenfest", {{"surface", "ellipsoid"}})) == 2);
  CHECK(run(make("ehrenfest", {{"surface", "sphere"}}, {"x+*y"})) == 2);
  CHECK(run(make("ehrenfest", {{"surface", "sphere"}, {"gate", "-1"}})) == 2);
  // an impossible gate turns the consistency check into a failure
  CHECK(run(make("ehrenfest", {{"surface", "torus"}, {"samples", "4"}, {"gate", "1e-300"}})) == 1);
}

TEST_CASE("orderings and hermiticity commands") {
  json rep;
  CHECK(run(make("orderings", {{"surface", "ellipsoid"}, {"a", "1"}, {"b", "1.5"}, {"c", "2"}}), &rep) == 0);
  const auto& defects = rep["result"]["defects"];
  for (const auto& d : defects) {
    if (d["operator"] == "weinberg_raw") {
      CHECK(d["max_abs"].get<double>() >= 1e-3);
    } else {
      CHECK(d["max_abs"].get<double>() <= 1e-8);
    }
  }
  CHECK(rep["trial_defaults_used"]["phi"] == true);
  CHECK(rep["result"]["phi"] == "1");
  CHECK(rep["result"]["psi"] == "x");

  CHECK(run(make("hermiticity", {{"surface", "sphere"}, {"phi", "x"}, {"resolution", "48"}}, {"1"}), &rep) == 0);
  CHECK(rep["trial_defaults_used"]["phi"] == false);
}

TEST_CASE("classical command") {
  json rep;
  const std::string csv = "cli_classical_test.csv";
  CHECK(run(make("classical", {{"surface", "circle"}, {"r", "1"}, {"x0", "1,0"}, {"p0", "0,1"},
                               {"T", "6.283185307179586"}, {"csv", csv}}),
            &rep) == 0);
  CHECK(rep["result"]["summary"]["return_error"].get<double>() <= 1e-6);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x1,x2,p1,p2,E,f,n_dot_p");
  std::remove(csv.c_str());

  CHECK(run(make("classical", {{"surface", "sphere"}, {"x0", "1,0,0"}, {"p0", "0.5,1,0"}})) == 2);
  CHECK(run(make("classical", {{"surface", "sphere"}, {"x0", "1,0,0"}, {"p0", "0.0005,1,0"}, {"T", "1"}}), &rep) == 0);
  CHECK(rep["warnings"].size() == 1);
  CHECK(run(make("classical", {{"surface", "sphere"}, {"x0", "1.2,0,0"}})) == 2);
  CHECK(run(make("classical", {{"surface", "sphere"}, {"force_form", "euler"}})) == 2);
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  const RunConfig cfg = make("ehrenfest", {{"surface", "torus"}, {"samples", "6"}, {"seed", "11"}});
  json a, b;
  run(cfg, &a);
  run(cfg, &b);
  CHECK(a.contains("generated_at"));
  a.erase("generated_at");
  b.erase("generated_at");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("binary exit codes") {
  CHECK(shell("surface validate --surface sphere --r 1 --dim 3") == 0);
  CHECK(shell("surface validate --surface torus --R0 1 --a 1.5") == 2);
  CHECK(shell("ehrenfest --surface ellipsoid") == 2);
  CHECK(shell("frobnicate") == 2);
  CHECK(shell("classical --surface circle --T 1 --h 0.01") == 0);
  CHECK(shell("surface inspect --surface torus --samples 2") == 0);
  CHECK(shell("ehrenfest --surface sphere --config /nonexistent.ini") == 2);
  CHECK(shell("surface validate --config " GEOAUDIT_CONFIGS "/custom_sphere.ini") == 0);
  CHECK(shell("ehrenfest --config " GEOAUDIT_CONFIGS "/torus_audit.ini --samples 5") == 0);
}
