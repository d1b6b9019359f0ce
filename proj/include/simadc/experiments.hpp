#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace simadc {

// One CLI invocation: which experiment to run, where the config lives, where
// artifacts go, and the reproducibility knobs. Optional fields are CLI
// overrides that take precedence over config-file keys.
struct ExperimentSpec {
    std::string kind;  // trace | sweep | adc | dwell | arrhenius | psw | report
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t master_seed = 42;
    int workers = 1;

    std::optional<int> bits;
    std::optional<double> t_s;
    std::optional<double> duration;
    std::optional<std::vector<double>> voltages;
};

// Runs one experiment end to end: loads and validates the config, applies
// the CLI overrides, computes every result in memory, and only then writes
// the CSV artifacts, plot scripts, and a manifest that records the effective
// config, seed, code version, wall time, and a digest of every artifact.
// A failed run writes nothing.
void run_experiment(const ExperimentSpec& spec);

// Writes plot scripts for whichever known artifacts are already present in
// out_dir. Throws IoError listing the expected artifact names when none are
// found.
void emit_plot_scripts(const std::string& out_dir);

}  // namespace simadc
