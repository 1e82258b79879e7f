#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoaudit/commands.hpp"
#include "geoaudit/parallel.hpp"

namespace {

// Options shared by every subcommand; each maps onto a config key of the same name.
struct Flags {
  std::map<std::string, std::string> values;
  std::vector<std::string> psi;
  std::string config_path;
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->set_help_flag("--help", "print help and exit");  // -h would clash with --h
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"surface", "builtin surface name"},
      {"r", "radius"},
      {"a", "radius / semi-axis"},
      {"b", "semi-axis"},
      {"c", "semi-axis"},
      {"R0", "torus major radius"},
      {"L", "cylinder half-length"},
      {"dim", "ambient dimension"},
      {"levelset", "custom levelset expression"},
      {"sdf", "custom levelset is a signed distance (true|false)"},
      {"xi", "xi"},
      {"eta", "eta"},
      {"hbar", "hbar"},
      {"mu", "mass"},
      {"phi", "trial function 're;im'"},
      {"samples", "sample count"},
      {"seed", "RNG seed"},
      {"resolution", "quadrature nodes per axis"},
      {"tol", "breakdown tolerance on |F|"},
      {"gate", "two-route mismatch gate"},
      {"out", "JSON report path (default stdout)"},
      {"csv", "CSV table path"},
      {"potential", "extra potential W for the no-fix check"},
      {"momentum", "geometric|ambient|tangential_only"},
      {"ops", "comma-separated operator list"},
      {"x0", "initial position, comma-separated"},
      {"p0", "initial momentum, comma-separated"},
      {"T", "final time"},
      {"h", "step size"},
      {"force-form", "projector|weinberg"},
      {"record-every", "store every k-th state"},
      {"serial", "use the serial reference path (true|false)"},
  };
  for (const auto& [name, help] : keys) {
    std::string key = name;
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    cmd->add_option_function<std::string>(
        "--" + name, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
  }
  cmd->add_option("--psi", flags.psi, "wavefunction 're;im' (repeatable)")->take_all();
  cmd->add_option("--config", flags.config_path, "config file (flags override it)");
}

}  // namespace

int main(int argc, char** argv) {
  geoaudit::configure_threads_from_env();
  CLI::App app{"geoaudit: geometric-momentum Ehrenfest audits on hypersurfaces"};
  app.require_subcommand(1);
  Flags flags;
  std::string command;

  auto* surface = app.add_subcommand("surface", "surface checks");
  surface->require_subcommand(1);
  for (const char* sub : {"validate", "inspect"}) {
    auto* s = surface->add_subcommand(sub, std::string("surface ") + sub);
    add_common(s, flags);
    s->callback([&command, sub] { command = std::string("surface ") + sub; });
  }
  for (const char* name : {"ehrenfest", "hermiticity", "orderings", "classical"}) {
    auto* s = app.add_subcommand(name, std::string(name) + " audit");
    add_common(s, flags);
    s->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : geoaudit::kExitBadInput;
  }

  geoaudit::RunConfig cfg;
  try {
    if (!flags.config_path.empty()) cfg = geoaudit::load_config_file(flags.config_path);
    geoaudit::apply_overrides(cfg, flags.values, flags.psi);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return geoaudit::kExitBadInput;
  }
  cfg.command = command;
  return geoaudit::run_command(cfg, std::cout, std::cerr);
}
