#pragma once

// Plain-text experiment configuration: one `key = value` per line, `#` starts
// a comment. Keys: scenario, p, r_max, n, dt, t_end, c1, c2, lambda, epsilon,
// delta, norm_pairs, seed. Only `scenario` is required; everything else falls
// back to the scenario's defaults.
//
// norm_pairs is a space separated list of q:r or q:r:grad items, e.g. "8:4 2:6:grad".

#include "radnls/evolution.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace radnls {

struct ExperimentConfig {
    std::string scenario;
    double p = 3.0;
    double r_max = 64.0;
    std::size_t n = 4096;
    double dt = 1e-3;
    double t_end = 4.0;
    double c1 = 1.0;
    double c2 = 0.0;
    double lambda = 1.0;
    double epsilon = 1e-3;
    double delta = 0.1;
    std::vector<NormPair> norm_pairs;
    std::uint64_t seed = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Names accepted by `experiment <name>`.
const std::vector<std::string>& experiment_names();
/// Every accepted scenario value: the experiments plus "simulate".
const std::vector<std::string>& scenario_names();

/// Defaults for a scenario. Throws ConfigError listing valid names for unknown scenarios.
ExperimentConfig default_config(std::string_view scenario);

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Validate ranges (grid, step, power). Throws RangeError or ConfigError.
void validate(const ExperimentConfig& cfg);

/// True when 7/3 < p <= 3, the range covered by the scattering theorem in three dimensions.
bool in_theorem_range(double p);

/// Canonical `key = value` text with every key in fixed order; parse_config_text round-trips it.
std::string canonical_text(const ExperimentConfig& cfg);

/// Apply `key=value` overrides on top of cfg (same validation as a config file).
ExperimentConfig with_overrides(const ExperimentConfig& cfg, const std::vector<std::string>& overrides);

/// Hex SHA-256 of canonical_text(cfg).
std::string config_hash(const ExperimentConfig& cfg);

std::string format_norm_pairs(const std::vector<NormPair>& pairs);
std::vector<NormPair> parse_norm_pairs(std::string_view text);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

/// u0 = c1 exp(-r^2/2) + c2 lambda exp(-lambda^2 r^2/2) on g.
RadialField initial_data(const RadialGrid& g, const ExperimentConfig& cfg);

} // namespace radnls
