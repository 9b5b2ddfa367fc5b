#include "radnls/output.hpp"

#include "radnls/error.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>

namespace radnls {

namespace {

std::string csv_number(double x) { return std::isfinite(x) ? format_double(x) : (std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")); }

std::string header(const Column& c) { return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]"; }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw ConfigError("cannot write " + p.string());
    return os;
}

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

} // namespace

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << header(table.columns[c]);
    os << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const auto& col = table.columns[c].values;
            os << (c ? "," : "") << (r < col.size() ? csv_number(col[r]) : "");
        }
        os << '\n';
    }
}

void write_assertions_csv(std::ostream& os, const ExperimentResult& result) {
    os << "name,measured,comparator,threshold,passed\n";
    for (const auto& a : result.assertions)
        os << a.name << ',' << csv_number(a.measured) << ',' << a.comparator << ',' << csv_number(a.threshold) << ','
           << (a.passed ? "true" : "false") << '\n';
}

nlohmann::json to_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["passed"] = r.passed();
    nlohmann::json scalars = nlohmann::json::object();
    for (const auto& [k, v] : r.scalars)
        scalars[k] = number(v);
    j["scalars"] = scalars;
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : r.assertions)
        j["assertions"].push_back({{"name", a.name},
                                   {"measured", number(a.measured)},
                                   {"comparator", a.comparator},
                                   {"threshold", number(a.threshold)},
                                   {"passed", a.passed}});
    j["tables"] = nlohmann::json::array();
    for (const auto& t : r.tables) {
        nlohmann::json cols = nlohmann::json::array();
        for (const auto& c : t.columns) {
            nlohmann::json vals = nlohmann::json::array();
            for (double v : c.values)
                vals.push_back(number(v));
            cols.push_back({{"name", c.name}, {"unit", c.unit}, {"values", vals}});
        }
        j["tables"].push_back({{"name", t.name}, {"columns", cols}});
    }
    j["notes"] = r.notes;
    nlohmann::json deltas = nlohmann::json::object();
    for (const auto& [k, v] : r.provenance.grid_deltas)
        deltas[k] = number(v);
    j["provenance"] = {{"config_hash", r.provenance.config_hash},
                       {"code_version", r.provenance.code_version},
                       {"in_theorem_range", r.provenance.in_theorem_range},
                       {"grid_deltas", deltas}};
    return j;
}

nlohmann::json to_json(const NormReport& rep) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [k, v] : rep.values)
        values[k] = number(v);
    return {{"r_max", rep.r_max}, {"n", rep.n}, {"p", rep.p}, {"besov_truncated", rep.besov_truncated},
            {"values", values}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json manifest(const ExperimentResult& r, const std::string& timestamp,
                        const std::vector<std::filesystem::path>& artifacts) {
    std::size_t failed = 0;
    for (const auto& a : r.assertions)
        failed += a.passed ? 0 : 1;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : artifacts)
        files.push_back(p.filename().string());
    return {{"scenario", r.scenario},
            {"config_hash", r.provenance.config_hash},
            {"config", r.provenance.config_text},
            {"code_version", r.provenance.code_version},
            {"timestamp", timestamp},
            {"wall_seconds", r.provenance.wall_seconds},
            {"passed", r.passed()},
            {"assertions_total", r.assertions.size()},
            {"assertions_failed", failed},
            {"artifacts", files}};
}

std::vector<std::filesystem::path> write_result(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& t : r.tables) {
        auto p = dir / (t.name + ".csv");
        auto os = open_out(p);
        write_csv(os, t);
        written.push_back(std::move(p));
    }
    {
        auto p = dir / "assertions.csv";
        auto os = open_out(p);
        write_assertions_csv(os, r);
        written.push_back(std::move(p));
    }
    {
        auto p = dir / "result.json";
        auto os = open_out(p);
        os << to_json(r).dump(2) << '\n';
        written.push_back(std::move(p));
    }
    {
        auto p = dir / "manifest.json";
        written.push_back(p);
        auto os = open_out(p);
        os << manifest(r, utc_timestamp(), written).dump(2) << '\n';
    }
    return written;
}

void write_conserved_csv(std::ostream& os, const Trajectory& traj) {
    os << "t [time],mass [1],energy [1]\n";
    for (const auto& s : traj.conserved)
        os << csv_number(s.t) << ',' << csv_number(s.mass) << ',' << csv_number(s.energy) << '\n';
}

void write_field_csv(std::ostream& os, const RadialField& u) {
    os << "r [length],re_u [1],im_u [1]\n";
    const auto r = u.grid.radii();
    for (std::size_t k = 0; k < u.size(); ++k)
        os << csv_number(r[k]) << ',' << csv_number(u.values[k].real()) << ',' << csv_number(u.values[k].imag())
           << '\n';
}

} // namespace radnls
