#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polyframe/basis.hpp"
#include "polyframe/domain.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/multi_index.hpp"

namespace polyframe {

/// Sectioned key-value file: `[section]` headers, `key = value` lines,
/// `#` comments.  Values keep internal whitespace (schedules are lists).
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& is) {
        KeyValueConfig cfg;
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[' && t.back() == ']') {
                section = trim(t.substr(1, t.size() - 2));
                continue;
            }
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = trim(t.substr(0, eq));
            std::string val = trim(t.substr(eq + 1));
            cfg.values_[section + "." + key] = val;
        }
        return cfg;
    }

    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config file: " + path);
        return parse(is);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        return has(key) ? std::stod(get(key)) : fallback;
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        return has(key) ? std::stoll(get(key)) : fallback;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? std::stoull(get(key)) : fallback;
    }

    std::vector<std::uint64_t> get_u64_list(const std::string& key) const {
        std::istringstream ls(get(key));
        std::vector<std::uint64_t> out;
        std::uint64_t v;
        while (ls >> v) out.push_back(v);
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

    /// Canonical text form (sorted keys); the config hash is FNV-1a of this.
    std::string canonical() const {
        std::ostringstream os;
        for (const auto& [k, v] : values_) os << k << "=" << v << "\n";
        return os.str();
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (char c : canonical()) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
};

enum class ExperimentKind { Converge, ConditioningSweep, ErrorMap, Bounds };

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Converge: return "converge";
        case ExperimentKind::ConditioningSweep: return "conditioning";
        case ExperimentKind::ErrorMap: return "errormap";
        case ExperimentKind::Bounds: return "bounds";
    }
    return "?";
}

enum class ScheduleType { Degree, Budget };

/// Declarative sweep description for one experiment run.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Converge;
    DomainSpec domain;
    BasisKind basis = BasisKind::legendre();
    IndexSetKind index_kind = IndexSetKind::HyperbolicCross;
    std::vector<std::uint64_t> schedule; // degrees n or budgets M
    ScheduleType schedule_type = ScheduleType::Budget;
    double epsilon = 1e-8;
    std::vector<OversamplingRule> rules = {{OversamplingKind::LogLinear, 1.0}};
    int trials = 20;
    std::uint64_t seed = 0;
    std::size_t error_points = 10'000; // K for error/Gram estimation
    std::string target_id = "expmean";
    std::string output_path;
    int grid_size = 256;   // errormap
    double delta = 0.5;    // bounds
    double gamma = 0.1;    // bounds
    double bound_L = 1.0;  // bounds: sup-norm bound for the truncation
    std::uint64_t config_hash = 0;

    static ExperimentConfig from_kv(const KeyValueConfig& kv,
                                    const char* type_override = nullptr);
};

namespace detail {

inline OversamplingRule parse_rule(const std::string& name, double c) {
    if (name == "direct") return {OversamplingKind::Direct, c};
    if (name == "linear") return {OversamplingKind::Linear, c};
    if (name == "loglinear") return {OversamplingKind::LogLinear, c};
    if (name == "quadratic") return {OversamplingKind::Quadratic, c};
    throw ConfigError("unknown oversampling rule: " + name);
}

inline DomainSpec parse_domain(const KeyValueConfig& kv) {
    std::string kind = kv.get("domain.kind");
    int d = static_cast<int>(kv.get_int("domain.d", 2));
    double T = kv.get_double("domain.T", 1.0);
    if (kind == "fullbox") return DomainSpec::full_box(d, T);
    if (kind == "lshape") return DomainSpec::l_shape();
    if (kind == "linear_constraint") return DomainSpec::linear_constraint();
    if (kind == "disc_exclusion")
        return DomainSpec::disc_exclusion(kv.get_double("domain.rho", 0.5));
    if (kind == "circle")
        return DomainSpec::circle(kv.get_double("domain.r", 1.0));
    if (kind == "annulus")
        return DomainSpec::annulus(kv.get_double("domain.r_inner", 0.125),
                                   kv.get_double("domain.r_outer", 0.5), d);
    if (kind == "corner") return DomainSpec::corner(d, T);
    if (kind == "norm_exclusion")
        return DomainSpec::norm_exclusion(kv.get_double("domain.r", 0.5), d);
    if (kind == "unit_ball") return DomainSpec::unit_ball(d);
    if (kind == "implicit")
        return DomainSpec::implicit_nonneg(kv.get("domain.target"));
    if (kind == "mandelbrot") return DomainSpec::mandelbrot();
    throw ConfigError("unknown domain kind: " + kind);
}

inline BasisKind parse_basis(const KeyValueConfig& kv) {
    std::string family = kv.get_or("basis.family", "legendre");
    if (family == "legendre") return BasisKind::legendre();
    if (family == "chebyshev") return BasisKind::chebyshev();
    if (family == "cosine")
        return BasisKind::cosine(kv.get_double("basis.T", 1.0));
    throw ConfigError("unknown basis family: " + family);
}

} // namespace detail

inline ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv,
                                                  const char* type_override) {
    ExperimentConfig cfg;
    std::string type =
        type_override ? std::string(type_override) : kv.get("experiment.type");
    if (type == "converge") cfg.experiment = ExperimentKind::Converge;
    else if (type == "conditioning") cfg.experiment = ExperimentKind::ConditioningSweep;
    else if (type == "errormap") cfg.experiment = ExperimentKind::ErrorMap;
    else if (type == "bounds") cfg.experiment = ExperimentKind::Bounds;
    else throw ConfigError("unknown experiment type: " + type);

    cfg.domain = detail::parse_domain(kv);
    cfg.basis = detail::parse_basis(kv);
    cfg.index_kind =
        index_set_kind_from_string(kv.get_or("experiment.index_kind", "hyperbolic_cross"));
    cfg.schedule = kv.get_u64_list("experiment.schedule");
    if (cfg.schedule.empty())
        throw ConfigError("experiment.schedule must be nonempty");
    for (std::size_t i = 1; i < cfg.schedule.size(); ++i)
        if (cfg.schedule[i] <= cfg.schedule[i - 1])
            throw ConfigError("schedule must be strictly increasing");
    std::string st = kv.get_or("experiment.schedule_type", "budget");
    if (st == "budget") cfg.schedule_type = ScheduleType::Budget;
    else if (st == "degree") cfg.schedule_type = ScheduleType::Degree;
    else throw ConfigError("schedule_type must be budget or degree");

    cfg.epsilon = kv.get_double("experiment.epsilon", 1e-8);
    cfg.trials = static_cast<int>(kv.get_int("experiment.trials", 20));
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    cfg.seed = kv.get_u64("experiment.seed", 0);
    cfg.error_points =
        static_cast<std::size_t>(kv.get_int("experiment.error_points", 10'000));
    cfg.target_id = kv.get_or("experiment.target", "expmean");
    cfg.grid_size = static_cast<int>(kv.get_int("experiment.grid", 256));
    cfg.delta = kv.get_double("experiment.delta", 0.5);
    cfg.gamma = kv.get_double("experiment.gamma", 0.1);
    cfg.bound_L = kv.get_double("experiment.bound_L", 1.0);

    cfg.rules.clear();
    std::istringstream rs(kv.get_or("experiment.rules", "loglinear"));
    std::string rule_name;
    double c = kv.get_double("experiment.rule_c", 1.0);
    while (rs >> rule_name) cfg.rules.push_back(detail::parse_rule(rule_name, c));
    if (cfg.rules.empty()) throw ConfigError("no oversampling rules given");

    cfg.config_hash = kv.hash();
    return cfg;
}

} // namespace polyframe
