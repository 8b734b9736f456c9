#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "cac/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string trace_path;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool sim_flags) {
    cmd->add_option("--config", args.config_path, "experiment configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_path, "CSV output path (overrides output.csv)");
    if (sim_flags) {
        cmd->add_option("--trace", args.trace_path, "event trace path (overrides output.trace)");
        cmd->add_option("--seed", args.seed, "simulation seed (overrides sim.seed)");
    }
}

int run(const CommonArgs& args, bool analytical_only, bool require_sim) {
    cac::ExperimentConfig cfg;
    try {
        cfg = cac::load_config(args.config_path);
    } catch (const cac::ValidationError& err) {
        std::cerr << err.what() << '\n';
        return 1;
    }
    if (require_sim && !cfg.sim.has_value()) {
        std::cerr << "the 'simulate' command needs a sim block in the configuration\n";
        return 1;
    }
    if (args.seed >= 0 && cfg.sim.has_value()) cfg.sim->seed = static_cast<std::uint64_t>(args.seed);

    const std::string csv_path = !args.out_path.empty() ? args.out_path : cfg.csv_path;
    if (csv_path.empty()) {
        std::cerr << "no CSV output path: set output.csv in the config or pass --out\n";
        return 1;
    }
    std::ofstream csv(csv_path, std::ios::binary);  // LF line endings everywhere
    if (!csv) {
        std::cerr << "cannot open '" << csv_path << "' for writing\n";
        return 1;
    }

    std::ofstream trace_file;
    std::unique_ptr<cac::TraceWriter> tracer;
    const std::string trace_path = !args.trace_path.empty() ? args.trace_path : cfg.trace_path;
    if (!analytical_only && !trace_path.empty()) {
        trace_file.open(trace_path, std::ios::binary);
        if (!trace_file) {
            std::cerr << "cannot open '" << trace_path << "' for writing\n";
            return 1;
        }
        tracer = std::make_unique<cac::TraceWriter>(trace_file, cfg.system);
    }

    const int status = cac::run_experiment(cfg, csv, std::cerr, tracer.get(), analytical_only);
    if (status == 0) std::cerr << "wrote " << csv_path << '\n';
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive bandwidth-allocation CAC: analytical chain and simulator sweeps"};
    app.require_subcommand(1);

    CommonArgs analyze_args, simulate_args;
    std::string validate_path;

    CLI::App* analyze = app.add_subcommand("analyze", "analytical sweep only");
    add_common(analyze, analyze_args, false);
    CLI::App* simulate = app.add_subcommand("simulate", "analytical plus simulated sweep");
    add_common(simulate, simulate_args, true);
    CLI::App* validate = app.add_subcommand("validate", "check a configuration and exit");
    validate->add_option("--config", validate_path, "experiment configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            try {
                cac::ExperimentConfig cfg = cac::load_config(validate_path);
                std::cout << "ok: " << cfg.system.classes.size() << " classes, "
                          << cfg.schemes.size() << " scheme(s), " << cfg.sweep.size()
                          << " load(s)" << (cfg.sim ? ", sim enabled" : "") << '\n';
                return 0;
            } catch (const cac::ValidationError& err) {
                std::cerr << err.what() << '\n';
                return 1;
            }
        }
        if (analyze->parsed()) return run(analyze_args, true, false);
        return run(simulate_args, false, true);
    } catch (const cac::Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
