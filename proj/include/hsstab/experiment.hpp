#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hsstab/rep.hpp"

namespace hsstab {

// Seeded experiment drivers behind the CLI. Each driver renders its complete
// output file in memory (byte-deterministic for a fixed config) and flags
// violations of paper-guaranteed bounds for the exit code.

struct ExperimentConfig {
    std::string experiment;  // defect | separation | correct | decompose
    std::string group_spec;
    int n = 0;  // correct: compressed dimension
    int m = 0;  // correct: enlarged dimension (0 = cycle n + seed%3)
    std::uint64_t seed = 0;
    std::string mode = "auto";  // exact | sampled | auto
    std::uint64_t samples = 0;  // pair samples (defect) / element samples (separation); 0 = default
    int candidates = 200;       // separation
    int instances = 100;        // decompose round trip
    int max_total_dim = 32;     // decompose planted dimension budget
    int seeds = 20;             // correct: witness count
    int d = 0;                  // correct: 0 = max_irrep_dim(group)
    double noise = 0.05;        // correct: base noise level
    bool regular = false;       // decompose: prepend the regular-representation row
    std::uint64_t pair_budget = kPairBudget;
    std::string out;  // output path; empty = stdout
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the JSON config document; unknown fields and type mismatches raise
// ConfigError with the offending field named.
ExperimentConfig load_config(const std::string& json_text);

// Applies defaults that depend on the experiment kind (sample counts).
void apply_defaults(ExperimentConfig& config);

struct ExperimentOutput {
    std::string content;           // full CSV or JSON file body
    std::string summary;           // one-line summary for stdout
    bool bound_violation = false;  // a paper-guaranteed bound failed
};

ExperimentOutput run_defect_experiment(const ExperimentConfig& config);
ExperimentOutput run_separation_experiment(const ExperimentConfig& config);
ExperimentOutput run_correction_experiment(const ExperimentConfig& config);
ExperimentOutput run_decompose_roundtrip(const ExperimentConfig& config);

// Dispatch on config.experiment.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// 17 significant digits, C locale.
std::string format_float(double v);

}  // namespace hsstab
