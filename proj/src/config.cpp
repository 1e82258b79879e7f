#include "geoaudit/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace geoaudit {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

}  // namespace

bool RunConfig::has(const std::string& key) const { return values.count(key) != 0; }

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double RunConfig::number(const std::string& key, double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : to_double(key, it->second);
}

long long RunConfig::integer(const std::string& key, long long fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + it->second + "'");
  }
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + it->second + "'");
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool in_chart = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      const std::string section = trim(std::string_view(t).substr(1, t.size() - 2));
      in_chart = section == "chart";
      if (in_chart) cfg.charts.emplace_back();
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (in_chart) {
      ChartDecl& c = cfg.charts.back();
      if (key == "map") {
        c.map = value;
      } else if (key == "lo") {
        c.lo = value;
      } else if (key == "hi") {
        c.hi = value;
      } else if (key == "periodic") {
        c.periodic = value;
      } else if (key == "area") {
        c.area = value;
      } else {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown chart key '" + key + "'");
      }
    } else if (key == "psi") {
      cfg.psi.push_back(value);
    } else {
      cfg.values[key] = value;
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_overrides(RunConfig& cfg, const std::map<std::string, std::string>& flags,
                     const std::vector<std::string>& psi) {
  for (const auto& [k, v] : flags) cfg.values[k] = v;
  if (!psi.empty()) cfg.psi = psi;
}

std::vector<double> parse_vector(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double("vector", tok));
  return out;
}

WaveField parse_wavefield(const std::string& text, int dim) {
  const auto parts = split(text, ';');
  if (parts.size() > 2) throw ConfigError("wavefield '" + text + "': expected 're' or 're;im'");
  const Expr re = parse_expr(parts[0], dim);
  const Expr im = parts.size() == 2 ? parse_expr(parts[1], dim) : Expr::constant(0.0, dim);
  return {text, ComplexExpr(re, im)};
}

SurfaceSpec surface_from_config(const RunConfig& cfg) {
  const int dim = static_cast<int>(cfg.integer("dim", 0));
  if (cfg.has("levelset")) {
    const int n = dim == 0 ? 3 : dim;
    const Expr f = parse_expr(cfg.text("levelset"), n);
    std::vector<Chart> charts;
    for (const auto& decl : cfg.charts) {
      Chart c;
      c.param_dim = n - 1;
      for (const auto& m : split(decl.map, ',')) c.map.push_back(parse_expr(m, n - 1));
      c.lo = parse_vector(decl.lo);
      c.hi = parse_vector(decl.hi);
      for (double v : parse_vector(decl.periodic.empty() ? std::string(n - 1, '0') : decl.periodic)) {
        c.periodic.push_back(v != 0.0);
      }
      if (decl.area.empty()) throw ConfigError("chart declaration needs an area element");
      c.area_element = parse_expr(decl.area, n - 1);
      charts.push_back(std::move(c));
    }
    return custom_surface(cfg.text("surface", "custom"), f, cfg.flag("sdf", false), std::move(charts));
  }
  if (!cfg.has("surface")) throw ConfigError("no surface selected (use --surface or --levelset)");
  std::map<std::string, double> params;
  for (const char* key : {"r", "a", "b", "c", "R0", "L"}) {
    if (cfg.has(key)) params[key] = cfg.number(key, 0.0);
  }
  return builtin_surface(cfg.text("surface"), params, dim);
}

OperatorParams params_from_config(const RunConfig& cfg) {
  OperatorParams p;
  p.xi = cfg.number("xi", 0.0);
  p.eta = cfg.number("eta", 0.0);
  p.hbar = cfg.number("hbar", 1.0);
  p.mu = cfg.number("mu", 1.0);
  p.validate();
  return p;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = cfg.values;
  j["command"] = cfg.command;
  j["psi"] = cfg.psi;
  nlohmann::json charts = nlohmann::json::array();
  for (const auto& c : cfg.charts) {
    charts.push_back({{"map", c.map}, {"lo", c.lo}, {"hi", c.hi}, {"periodic", c.periodic}, {"area", c.area}});
  }
  j["charts"] = charts;
  return j;
}

}  // namespace geoaudit
