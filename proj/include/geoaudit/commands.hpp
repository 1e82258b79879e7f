#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "geoaudit/config.hpp"

namespace geoaudit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitBadInput = 2;

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;  // deterministic; no timestamp
  std::string csv;        // empty when the command has no table
  std::vector<std::string> warnings;
};

CommandResult cmd_surface_validate(const RunConfig& cfg);
CommandResult cmd_surface_inspect(const RunConfig& cfg);
CommandResult cmd_ehrenfest(const RunConfig& cfg);
CommandResult cmd_hermiticity(const RunConfig& cfg);
CommandResult cmd_orderings(const RunConfig& cfg);
CommandResult cmd_classical(const RunConfig& cfg);

/// Dispatches on cfg.command, maps input errors to exit 2, and writes the
/// report (with a generated_at stamp) to cfg "out" or `out`, and the table
/// to cfg "csv" when given.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace geoaudit
