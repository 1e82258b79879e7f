#pragma once

#include <iosfwd>

#include <json.hpp>

#include "geoaudit/audit.hpp"
#include "geoaudit/classical.hpp"
#include "geoaudit/surfaces.hpp"

namespace geoaudit {

// JSON encodings of the audit outputs. Complex numbers are {"re", "im"}
// objects; vectors of them are arrays of such pairs.

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const NoFixReport& r);
nlohmann::json to_json(const HermiticityReport& r);
nlohmann::json to_json(const TrajectorySummary& s);
nlohmann::json to_json(const OperatorParams& p);

/// point index, |F|, mismatch; one row per sample.
void write_residual_csv(std::ostream& os, const ResidualReport& r);

/// t, x1..xN, p1..pN, E, f, n.p
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryState>& states);

}  // namespace geoaudit
