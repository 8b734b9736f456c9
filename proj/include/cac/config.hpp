#ifndef CAC_CONFIG_HPP
#define CAC_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "cac/chain.hpp"
#include "cac/sim.hpp"

// Experiment configuration: JSON with strict key checking. The schema is
// documented in the README next to the shipped reference files.

namespace cac {

struct SimBlock {
    double horizon = 20000.0;
    double warmup = -1.0;  // < 0 means the 10%-of-horizon default
    int replications = 20;
    std::uint64_t seed = 1;
};

struct ExperimentOptions {
    NewCallFloorRule newcall_floor_rule = NewCallFloorRule::AnyClass;
    bool forced_termination_includes_blocking = false;
};

struct ExperimentConfig {
    SystemParams system;
    std::vector<double> sweep;          // lambda_n values, strictly increasing
    std::vector<SchemeSpec> schemes;
    std::optional<SimBlock> sim;        // absent => analytical only
    std::string csv_path;               // may be overridden on the command line
    std::string trace_path;
    ExperimentOptions options;
};

// Scheme names used in config files and the CSV `scheme` column.
std::string scheme_name(SchemeKind kind);
std::optional<SchemeKind> scheme_from_name(const std::string& name);

// Parses and validates; throws ValidationError listing every problem found
// (unknown keys, type mismatches, violated invariants).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace cac

#endif
