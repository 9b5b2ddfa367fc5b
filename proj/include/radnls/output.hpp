#pragma once

// Result serialization. CSV headers read `name [unit]` and numbers are written
// in shortest round-trip form, so a fixed config produces identical bytes on
// every run. Only manifest.json carries the timestamp and wall time.

#include "radnls/diagnostics.hpp"
#include "radnls/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace radnls {

void write_csv(std::ostream& os, const Table& table);
void write_assertions_csv(std::ostream& os, const ExperimentResult& result);

nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const NormReport& report);

/// Manifest with the config (defaults filled in), its hash, code version, wall time, pass/fail
/// summary, the emitted artifact names and an ISO-8601 UTC timestamp.
nlohmann::json manifest(const ExperimentResult& result, const std::string& timestamp,
                        const std::vector<std::filesystem::path>& artifacts);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Write <dir>/<table>.csv for every table, assertions.csv, result.json and manifest.json.
/// Returns the paths written.
std::vector<std::filesystem::path> write_result(const ExperimentResult& result, const std::filesystem::path& dir);

/// t, mass, energy per logged sample.
void write_conserved_csv(std::ostream& os, const Trajectory& traj);
/// r, Re u, Im u.
void write_field_csv(std::ostream& os, const RadialField& u);

} // namespace radnls
