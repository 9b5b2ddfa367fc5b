#pragma once

// Experiment runners. Each experiment runs at the configured resolution and
// again with twice as many grid points on the same domain; assertions are
// checked at both resolutions and the relative deltas of the headline
// quantities are kept in the provenance block.

#include "radnls/config.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace radnls {

struct Assertion {
    std::string name;
    double measured = 0.0;
    std::string comparator; ///< one of "<=", "<", ">=", ">"
    double threshold = 0.0;
    bool passed = false;
};

/// Evaluate `measured comparator threshold`. NaN never passes.
Assertion check(std::string name, double measured, std::string_view comparator, double threshold);

struct Column {
    std::string name;
    std::string unit; ///< "1" for dimensionless
    std::vector<double> values;
};

/// Column 0 is the axis.
struct Table {
    std::string name;
    std::vector<Column> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
};

struct Provenance {
    std::string config_hash;
    std::string code_version;
    std::string config_text;
    bool in_theorem_range = true;
    double wall_seconds = 0.0;
    /// Relative change of headline quantities between resolution n and 2n.
    std::map<std::string, double> grid_deltas;
};

struct ExperimentResult {
    std::string scenario;
    std::map<std::string, double> scalars;
    std::vector<Table> tables;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes;
    Provenance provenance;

    bool passed() const;
    const Assertion* find_assertion(std::string_view name) const;
    double scalar(std::string_view name) const; ///< throws ConfigError if missing
};

std::string code_version();

/// Output of one resolution leg before it is merged into an ExperimentResult.
struct LegOutput {
    std::map<std::string, double> scalars;
    std::vector<Table> tables;
    std::vector<Assertion> assertions;
};

/// Run `leg` with level 0 (cfg.n) and level 1 (2 cfg.n), merge both, and fill grid_deltas for `delta_keys`.
/// Scalars, tables and assertions of level 1 are suffixed with "@2n".
ExperimentResult run_two_resolutions(const ExperimentConfig& cfg,
                                     const std::function<LegOutput(const ExperimentConfig&, int level)>& leg,
                                     const std::vector<std::string>& delta_keys);

/// Largest step not above `dt_max` that divides t_end into a whole number of steps.
double fit_dt(double t_end, double dt_max);

// Scale covariance of the space-time norm under u0 -> lambda^{2/(p-1)} u0(lambda x), lambda in {1/2, 1, 2, 4}.
ExperimentResult scale_sweep(const ExperimentConfig& cfg);
// Scattering size and Morawetz bound for two-bump data with lambda = 1, 2, ..., cfg.lambda.
ExperimentResult two_bump_sweep(const ExperimentConfig& cfg);
// Pseudoconformal energy of the full solution on [1, t_end].
ExperimentResult monotonicity(const ExperimentConfig& cfg);
// Ratios of the free flow's sup norms to the critical Besov norm for t in [1, t_end].
ExperimentResult dispersive_decay(const ExperimentConfig& cfg);
// Rescale to small space-time norm on [0, 1], then per-octave gradient Strichartz ratios.
ExperimentResult local_bound(const ExperimentConfig& cfg);
// Cauchy differences of the scattering state e^{-it Laplacian} u(t).
ExperimentResult scattering_extraction(const ExperimentConfig& cfg);
// Scattering size against the critical Besov norm over amplitudes c1/8, c1/4, c1/2, c1.
ExperimentResult polynomial_sweep(const ExperimentConfig& cfg);

/// Dispatch on cfg.scenario. Throws ConfigError (listing valid names) for unknown experiments.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

} // namespace radnls
