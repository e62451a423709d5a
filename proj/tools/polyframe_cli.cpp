// Command-line driver for the experiment families.  Each subcommand
// reads a sectioned key-value config, runs the sweep, and writes CSV
// with a full config echo in the header.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <polyframe/config.hpp>
#include <polyframe/experiments.hpp>

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "config file path")->required();
    sub->add_option("--out", o.out_dir, "output directory");
    auto* s = sub->add_option("--seed", o.seed, "override experiment.seed");
    auto* t = sub->add_option("--trials", o.trials, "override experiment.trials");
    sub->callback([&o, s, t] {
        o.seed_set = s->count() > 0;
        o.trials_set = t->count() > 0;
    });
}

// Overrides must reach the config echo so reruns from the header
// reproduce the output.
polyframe::KeyValueConfig load_kv(const CommonOpts& o, const char* type) {
    std::ostringstream patched;
    {
        std::ifstream is(o.config_path);
        if (!is)
            throw polyframe::ConfigError("cannot open config file: " +
                                         o.config_path);
        patched << is.rdbuf();
    }
    patched << "\n[experiment]\ntype = " << type << "\n";
    if (o.seed_set) patched << "seed = " << o.seed << "\n";
    if (o.trials_set) patched << "trials = " << o.trials << "\n";
    std::istringstream is(patched.str());
    return polyframe::KeyValueConfig::parse(is);
}

std::ofstream open_output(const CommonOpts& o, const polyframe::ExperimentConfig& cfg,
                          const char* type) {
    std::filesystem::create_directories(o.out_dir);
    std::string name = cfg.output_path.empty()
                           ? std::string(type) + "_" + std::to_string(cfg.config_hash) + ".csv"
                           : cfg.output_path;
    std::filesystem::path path = std::filesystem::path(o.out_dir) / name;
    std::ofstream os(path);
    if (!os)
        throw polyframe::ConfigError("cannot open output file: " + path.string());
    std::cerr << "writing " << path.string() << "\n";
    return os;
}

int run(const CommonOpts& o, const char* type) {
    polyframe::KeyValueConfig kv = load_kv(o, type);
    polyframe::ExperimentConfig cfg = polyframe::ExperimentConfig::from_kv(kv, type);
    cfg.output_path = kv.get_or("experiment.output", "");
    std::ofstream os = open_output(o, cfg, type);
    std::string t(type);
    if (t == "converge")
        polyframe::write_convergence_csv(os, kv, polyframe::run_convergence(cfg));
    else if (t == "conditioning")
        polyframe::write_conditioning_csv(os, kv,
                                          polyframe::run_conditioning_sweep(cfg));
    else if (t == "errormap")
        polyframe::write_error_map_csv(os, kv, polyframe::run_error_map(cfg));
    else
        polyframe::write_bounds_csv(os, kv, polyframe::run_bounds(cfg));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial frame approximation experiments"};
    app.require_subcommand(1);

    CommonOpts opts;
    const char* types[] = {"converge", "conditioning", "errormap", "bounds"};
    const char* descs[] = {"median error versus sample budget",
                           "conditioning constants versus N",
                           "pointwise error on a 2-D grid",
                           "measured quantities against theoretical bounds"};
    for (int i = 0; i < 4; ++i) add_common(app.add_subcommand(types[i], descs[i]), opts);

    CLI11_PARSE(app, argc, argv);

    const char* type = app.get_subcommands().front()->get_name().c_str();
    try {
        return run(opts, type);
    } catch (const polyframe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const polyframe::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const polyframe::SamplingError& e) {
        std::cerr << "sampling failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}
