#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geoaudit/audit.hpp"
#include "geoaudit/surfaces.hpp"

namespace geoaudit {

class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

struct ChartDecl {
  std::string map;  // comma-separated coordinate expressions in x1..x(N-1)
  std::string lo;
  std::string hi;
  std::string periodic;
  std::string area;
};

/// Flat key/value run configuration. Sections in the file only group keys,
/// except [chart], which opens a new chart declaration for custom levelsets.
/// Repeated `psi` keys accumulate.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;
  std::vector<std::string> psi;
  std::vector<ChartDecl> charts;

  bool has(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback = "") const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
};

RunConfig parse_config_text(std::string_view text);
RunConfig load_config_file(const std::string& path);

/// Values from `flags` replace file values; a non-empty `psi` list replaces the file's list.
void apply_overrides(RunConfig& cfg, const std::map<std::string, std::string>& flags,
                     const std::vector<std::string>& psi);

SurfaceSpec surface_from_config(const RunConfig& cfg);
OperatorParams params_from_config(const RunConfig& cfg);
std::vector<double> parse_vector(const std::string& text);
WaveField parse_wavefield(const std::string& text, int dim);

nlohmann::json config_json(const RunConfig& cfg);

}  // namespace geoaudit
