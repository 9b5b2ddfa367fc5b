#include "radnls/config.hpp"

#include "radnls/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace radnls {

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"scale_sweep",  "two_bump",         "monotonicity",
                                                "dispersive_decay", "local_bound", "scattering_extraction",
                                                "polynomial_sweep"};
    return names;
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        auto v = experiment_names();
        v.insert(v.begin(), "simulate");
        return v;
    }();
    return names;
}

namespace {

std::string join_names(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v)
        out += (out.empty() ? "" : ", ") + s;
    return out;
}

} // namespace

ExperimentConfig default_config(std::string_view scenario) {
    ExperimentConfig c;
    c.scenario = std::string(scenario);
    if (scenario == "simulate") {
        c.norm_pairs = {{8.0, 4.0}};
    } else if (scenario == "scale_sweep") {
        c.r_max = 256.0;
        c.n = 4096;
        c.dt = 2e-3;
        c.t_end = 10.0;
        c.norm_pairs = {{8.0, 4.0}};
    } else if (scenario == "two_bump") {
        c.c1 = 0.5;
        c.c2 = 0.5;
        c.lambda = 8.0;
        c.r_max = 0.0;
        c.n = 0;
        c.dt = 0.0;
        c.t_end = 2.0;
        c.norm_pairs = {{8.0, 4.0}};
    } else if (scenario == "monotonicity") {
        c.p = 2.5;
        c.r_max = 128.0;
        c.n = 4096;
        c.dt = 5e-4;
        c.t_end = 8.0;
    } else if (scenario == "dispersive_decay") {
        c.r_max = 1024.0;
        c.n = 4096;
        c.t_end = 100.0;
    } else if (scenario == "local_bound") {
        c.r_max = 64.0;
        c.n = 4096;
        c.t_end = 1.0;
        c.norm_pairs = {{2.0, 6.0, true}};
    } else if (scenario == "scattering_extraction") {
        c.c1 = 0.05;
        c.r_max = 1024.0;
        c.n = 8192;
        c.dt = 1e-2;
        c.t_end = 80.0;
    } else if (scenario == "polynomial_sweep") {
        c.p = 2.5;
        c.c1 = 4.0;
        c.r_max = 256.0;
        c.n = 8192;
        c.dt = 2e-3;
        c.t_end = 10.0;
        c.norm_pairs = {{4.2, 3.5}};
    } else {
        throw ConfigError("unknown scenario '" + std::string(scenario) + "'; valid: " + join_names(scenario_names()));
    }
    return c;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string format_norm_pairs(const std::vector<NormPair>& pairs) {
    std::string out;
    for (const auto& pr : pairs) {
        if (!out.empty())
            out += ' ';
        out += format_double(pr.q_t) + ':' + format_double(pr.r_x);
        if (pr.gradient)
            out += ":grad";
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool to_double(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

template <typename T>
bool to_unsigned(std::string_view s, T& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

} // namespace

std::vector<NormPair> parse_norm_pairs(std::string_view text) {
    std::vector<NormPair> out;
    std::istringstream is{std::string(text)};
    std::string item;
    while (is >> item) {
        std::vector<std::string_view> parts;
        std::string_view rest = item;
        while (true) {
            const auto c = rest.find(':');
            parts.push_back(rest.substr(0, c));
            if (c == std::string_view::npos)
                break;
            rest = rest.substr(c + 1);
        }
        NormPair pr;
        const bool ok = (parts.size() == 2 || (parts.size() == 3 && parts[2] == "grad")) &&
                        to_double(parts[0], pr.q_t) && to_double(parts[1], pr.r_x);
        if (!ok)
            throw ConfigError("bad norm pair '" + item + "' (expected q:r or q:r:grad)");
        pr.gradient = parts.size() == 3;
        out.push_back(pr);
    }
    return out;
}

ExperimentConfig parse_config_text(std::string_view text) {
    static const std::vector<std::string> keys{"scenario", "p",       "r_max", "n",          "dt",   "t_end", "c1",
                                               "c2",       "lambda",  "epsilon", "delta",   "norm_pairs", "seed"};
    std::map<std::string, std::pair<std::string, std::size_t>> raw;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no);
        if (raw.count(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no);
        if (value.empty() && key != "norm_pairs")
            throw ParseError("line " + std::to_string(line_no) + ": key '" + key + "' has no value", line_no);
        raw[key] = {value, line_no};
    }
    const auto sc = raw.find("scenario");
    if (sc == raw.end())
        throw ParseError("missing required key 'scenario'", 0);
    ExperimentConfig cfg;
    try {
        cfg = default_config(sc->second.first);
    } catch (const ConfigError& e) {
        throw ParseError("line " + std::to_string(sc->second.second) + ": " + e.what(), sc->second.second);
    }
    const auto bad = [](const std::string& key, std::size_t line, const char* type) {
        return ParseError("line " + std::to_string(line) + ": key '" + key + "' expects " + type, line);
    };
    for (const auto& [key, entry] : raw) {
        const auto& [value, line] = entry;
        if (key == "scenario")
            continue;
        if (key == "n") {
            if (!to_unsigned(value, cfg.n))
                throw bad(key, line, "a nonnegative integer");
        } else if (key == "seed") {
            if (!to_unsigned(value, cfg.seed))
                throw bad(key, line, "a nonnegative integer");
        } else if (key == "norm_pairs") {
            try {
                cfg.norm_pairs = parse_norm_pairs(value);
            } catch (const ConfigError& e) {
                throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
            }
        } else {
            double x = 0.0;
            if (!to_double(value, x))
                throw bad(key, line, "a finite number");
            if (key == "p") {
                if (!(x > 1.0))
                    throw RangeError("line " + std::to_string(line) + ": p = " + value +
                                     " is out of range (p > 1 required)");
                cfg.p = x;
            } else if (key == "r_max") {
                cfg.r_max = x;
            } else if (key == "dt") {
                cfg.dt = x;
            } else if (key == "t_end") {
                cfg.t_end = x;
            } else if (key == "c1") {
                cfg.c1 = x;
            } else if (key == "c2") {
                cfg.c2 = x;
            } else if (key == "lambda") {
                cfg.lambda = x;
            } else if (key == "epsilon") {
                cfg.epsilon = x;
            } else if (key == "delta") {
                cfg.delta = x;
            }
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

bool in_theorem_range(double p) { return p > 7.0 / 3.0 && p <= 3.0; }

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.p > 1.0))
        throw RangeError("p must exceed 1");
    const bool auto_grid = cfg.scenario == "two_bump";
    if (!auto_grid || cfg.n != 0 || cfg.r_max != 0.0)
        RadialGrid(cfg.r_max, cfg.n);
    if (!(cfg.dt > 0.0) && !(auto_grid && cfg.dt == 0.0))
        throw RangeError("dt must be positive");
    if (!(cfg.t_end > 0.0))
        throw RangeError("t_end must be positive");
    if (!(cfg.lambda > 0.0))
        throw RangeError("lambda must be positive");
    if (!(cfg.epsilon > 0.0))
        throw RangeError("epsilon must be positive");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw RangeError("delta must lie in (0, 1)");
}

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "scenario = " << c.scenario << '\n'
       << "p = " << format_double(c.p) << '\n'
       << "r_max = " << format_double(c.r_max) << '\n'
       << "n = " << c.n << '\n'
       << "dt = " << format_double(c.dt) << '\n'
       << "t_end = " << format_double(c.t_end) << '\n'
       << "c1 = " << format_double(c.c1) << '\n'
       << "c2 = " << format_double(c.c2) << '\n'
       << "lambda = " << format_double(c.lambda) << '\n'
       << "epsilon = " << format_double(c.epsilon) << '\n'
       << "delta = " << format_double(c.delta) << '\n'
       << "norm_pairs = " << format_norm_pairs(c.norm_pairs) << '\n'
       << "seed = " << c.seed << '\n';
    return os.str();
}

ExperimentConfig with_overrides(const ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> entries;
    std::vector<std::string> order;
    std::istringstream is(canonical_text(cfg));
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        const std::string key(trim(std::string_view(line).substr(0, eq)));
        order.push_back(key);
        entries[key] = std::string(trim(std::string_view(line).substr(eq + 1)));
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + o + "' is not of the form key=value");
        const std::string key(trim(std::string_view(o).substr(0, eq)));
        if (!entries.count(key))
            throw ParseError("unknown key '" + key + "' in override '" + o + "'", 0);
        if (key == "scenario")
            throw ConfigError("the scenario cannot be overridden");
        entries[key] = std::string(trim(std::string_view(o).substr(eq + 1)));
    }
    std::string text;
    for (const auto& key : order)
        text += key + " = " + entries[key] + "\n";
    return parse_config_text(text);
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = canonical_text(cfg);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

RadialField initial_data(const RadialGrid& g, const ExperimentConfig& cfg) {
    return two_bump(g, cfg.c1, cfg.c2, cfg.lambda);
}

} // namespace radnls
