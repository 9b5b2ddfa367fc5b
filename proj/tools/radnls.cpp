// Command line front end: simulate, norms, experiment, checkpoint save/resume.
//
// Exit codes: 0 success (every assertion passed), 1 an experiment assertion
// failed, 2 bad usage or configuration, 3 numerical error during a run.

#include "radnls/checkpoint.hpp"
#include "radnls/config.hpp"
#include "radnls/diagnostics.hpp"
#include "radnls/error.hpp"
#include "radnls/experiments.hpp"
#include "radnls/output.hpp"
#include "radnls/simd.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

using namespace radnls;

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct ConfigOptions {
    std::string file;
    std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigOptions& o) {
    cmd->add_option("-c,--config", o.file, "config file (key = value lines)");
    cmd->add_option("-s,--set", o.overrides, "override a config key, e.g. --set dt=5e-4");
}

ExperimentConfig load(const ConfigOptions& o, const std::string& scenario) {
    ExperimentConfig cfg = o.file.empty() ? default_config(scenario) : parse_config(o.file);
    if (!o.file.empty() && !scenario.empty() && cfg.scenario != scenario)
        throw ConfigError("config file describes scenario '" + cfg.scenario + "' but '" + scenario +
                          "' was requested");
    cfg = with_overrides(cfg, o.overrides);
    validate(cfg);
    return cfg;
}

std::ofstream open_file(const std::filesystem::path& p) {
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw ConfigError("cannot write " + p.string());
    return os;
}

StepPolicy policy_from(const ExperimentConfig& cfg) {
    StepPolicy pol;
    pol.dt = cfg.dt;
    return pol;
}

std::size_t steps_for(const ExperimentConfig& cfg, double span) {
    const double s = span / cfg.dt;
    const auto k = static_cast<std::size_t>(std::llround(s));
    if (std::abs(s - static_cast<double>(k)) > 1e-6)
        throw ConfigError("t_end must be an integer multiple of dt");
    return k;
}

void print_norms(const Trajectory& tr) {
    for (const auto& pr : tr.pairs)
        std::cout << "  L^" << format_double(pr.q_t) << "_t L^" << format_double(pr.r_x) << "_x"
                  << (pr.gradient ? " (gradient)" : "") << " = " << format_double(spacetime_norm(tr, pr)) << '\n';
}

void write_run(const std::filesystem::path& dir, const Trajectory& tr, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(dir);
    {
        auto os = open_file(dir / "conserved.csv");
        write_conserved_csv(os, tr);
    }
    {
        auto os = open_file(dir / "final_state.csv");
        write_field_csv(os, tr.final_state());
    }
    nlohmann::json norms = nlohmann::json::array();
    for (const auto& pr : tr.pairs)
        norms.push_back({{"q_t", pr.q_t}, {"r_x", pr.r_x}, {"gradient", pr.gradient},
                         {"value", spacetime_norm(tr, pr)}});
    auto os = open_file(dir / "run.json");
    os << nlohmann::json{{"config_hash", config_hash(cfg)},
                         {"config", canonical_text(cfg)},
                         {"code_version", code_version()},
                         {"timestamp", utc_timestamp()},
                         {"t_end", tr.t_end()},
                         {"max_mass_drift", tr.max_mass_drift()},
                         {"max_energy_drift", tr.max_energy_drift()},
                         {"spacetime_norms", norms}}
              .dump(2)
       << '\n';
}

int cmd_simulate(const ConfigOptions& o, const std::string& out) {
    const auto cfg = load(o, "simulate");
    const RadialGrid g(cfg.r_max, cfg.n);
    const auto tr = simulate(initial_data(g, cfg), cfg.p, cfg.t_end, policy_from(cfg), cfg.norm_pairs);
    std::cout << "simulated to t = " << format_double(tr.t_end()) << " (mass drift "
              << format_double(tr.max_mass_drift()) << ", energy drift " << format_double(tr.max_energy_drift())
              << ")\n";
    print_norms(tr);
    if (!out.empty())
        write_run(out, tr, cfg);
    return 0;
}

int cmd_norms(const ConfigOptions& o) {
    const auto cfg = load(o, o.file.empty() ? "simulate" : "");
    const RadialGrid g(cfg.r_max, cfg.n);
    std::cout << to_json(norm_report(initial_data(g, cfg), cfg.p)).dump(2) << '\n';
    return 0;
}

int cmd_experiment(const std::string& name, const ConfigOptions& o, const std::string& out) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::cerr << "unknown experiment '" << name << "'; valid experiments:\n";
        for (const auto& n : names)
            std::cerr << "  " << n << '\n';
        return kExitUsage;
    }
    const auto cfg = load(o, name);
    const auto res = run_experiment(cfg);
    std::cout << res.scenario << " (config " << res.provenance.config_hash.substr(0, 12) << ", "
              << format_double(std::round(res.provenance.wall_seconds * 10.0) / 10.0) << " s)\n";
    for (const auto& note : res.notes)
        std::cout << "  note: " << note << '\n';
    for (const auto& a : res.assertions)
        std::cout << "  [" << (a.passed ? "PASS" : "FAIL") << "] " << a.name << ": " << format_double(a.measured) << ' '
                  << a.comparator << ' ' << format_double(a.threshold) << '\n';
    if (!out.empty())
        for (const auto& p : write_result(res, out))
            std::cout << "  wrote " << p.string() << '\n';
    return res.passed() ? 0 : kExitAssertion;
}

int cmd_checkpoint_save(const ConfigOptions& o, const std::string& file) {
    const auto cfg = load(o, "simulate");
    const RadialGrid g(cfg.r_max, cfg.n);
    const auto u0 = initial_data(g, cfg);
    check_boundary(u0, kDefaultBoundaryTol, "initial data");
    Integrator integ(u0, cfg.p, policy_from(cfg), cfg.norm_pairs);
    integ.run(steps_for(cfg, cfg.t_end));
    save_checkpoint(file, integ.snapshot());
    std::cout << "checkpoint at t = " << format_double(integ.time()) << " (step " << integ.step_index() << ") -> "
              << file << '\n';
    return 0;
}

int cmd_checkpoint_resume(const std::string& file, double t_more, const std::string& out) {
    auto integ = Integrator::restore(load_checkpoint(file));
    const double s = t_more / integ.policy().dt;
    const auto steps = static_cast<std::size_t>(std::llround(s));
    if (std::abs(s - static_cast<double>(steps)) > 1e-6)
        throw ConfigError("the continuation time must be an integer multiple of the stored dt");
    const auto tr = record(integ, steps);
    std::cout << "resumed to t = " << format_double(tr.t_end()) << '\n';
    print_norms(tr);
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        auto os = open_file(std::filesystem::path(out) / "final_state.csv");
        write_field_csv(os, tr.final_state());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial defocusing NLS solver and experiment runner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", radnls::code_version());

    ConfigOptions sim_opts, norm_opts, exp_opts, ck_opts;
    std::string sim_out, exp_out, exp_name, ck_file, resume_out;
    double resume_t = 0.0;

    auto* sim = app.add_subcommand("simulate", "integrate one initial datum");
    add_config_options(sim, sim_opts);
    sim->add_option("-o,--out", sim_out, "directory for conserved.csv, final_state.csv, run.json");

    auto* norms = app.add_subcommand("norms", "print the norm report of the initial datum as JSON");
    add_config_options(norms, norm_opts);

    auto* exp = app.add_subcommand("experiment", "run a named experiment");
    exp->add_option("name", exp_name, "experiment name")->required();
    add_config_options(exp, exp_opts);
    exp->add_option("-o,--out", exp_out, "directory for CSV tables and JSON results");

    auto* list = app.add_subcommand("list", "list experiment names");

    auto* ck = app.add_subcommand("checkpoint", "save or resume an integrator checkpoint");
    ck->require_subcommand(1);
    auto* save = ck->add_subcommand("save", "integrate to t_end and write a checkpoint");
    add_config_options(save, ck_opts);
    save->add_option("file", ck_file, "checkpoint path")->required();
    auto* resume = ck->add_subcommand("resume", "continue a checkpointed run");
    resume->add_option("file", ck_file, "checkpoint path")->required()->check(CLI::ExistingFile);
    resume->add_option("-t,--time", resume_t, "additional time to integrate")->required();
    resume->add_option("-o,--out", resume_out, "directory for final_state.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim)
            return cmd_simulate(sim_opts, sim_out);
        if (*norms)
            return cmd_norms(norm_opts);
        if (*exp)
            return cmd_experiment(exp_name, exp_opts, exp_out);
        if (*list) {
            for (const auto& n : radnls::experiment_names())
                std::cout << n << '\n';
            return 0;
        }
        if (*save)
            return cmd_checkpoint_save(ck_opts, ck_file);
        if (*resume)
            return cmd_checkpoint_resume(ck_file, resume_t, resume_out);
    } catch (const radnls::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const radnls::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const radnls::RangeError& e) {
        std::cerr << "range error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
