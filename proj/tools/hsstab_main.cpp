#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "hsstab/corrector.hpp"
#include "hsstab/decompose.hpp"
#include "hsstab/eigen.hpp"
#include "hsstab/experiment.hpp"
#include "hsstab/svd.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string group;
    std::string mode;
    std::string out;
    int n = 0, m = 0, candidates = 0, instances = 0, seeds = 0, max_total_dim = 0, d = 0;
    double noise = 0.0;
    std::uint64_t seed = 0, samples = 0, pair_budget = 0;
    bool regular = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file; explicit flags override its fields");
    cmd->add_option("--group", o.group, "group spec: cyclic:m, dihedral:m, heisenberg:p, product:SPEC,SPEC");
    cmd->add_option("--n", o.n, "compressed dimension (correct)");
    cmd->add_option("--m", o.m, "enlarged dimension (correct; 0 cycles n + seed%3)");
    cmd->add_option("--seed", o.seed, "base seed; all randomness derives from it");
    cmd->add_option("--mode", o.mode, "exact | sampled | auto")->check(CLI::IsMember({"exact", "sampled", "auto"}));
    cmd->add_option("--samples", o.samples, "pair samples (defect) / element samples (separation)");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--pair-budget", o.pair_budget, "exact pair-scan budget");
}

bool given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt && opt->count() > 0;
}

int run(const std::string& experiment, const CLI::App* cmd, const CliOverrides& o) {
    hsstab::ExperimentConfig config;
    if (given(cmd, "--config")) {
        std::ifstream in(o.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << o.config_path << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        config = hsstab::load_config(buf.str());
    }
    config.experiment = experiment;
    if (given(cmd, "--group")) config.group_spec = o.group;
    if (given(cmd, "--n")) config.n = o.n;
    if (given(cmd, "--m")) config.m = o.m;
    if (given(cmd, "--seed")) config.seed = o.seed;
    if (given(cmd, "--mode")) config.mode = o.mode;
    if (given(cmd, "--samples")) config.samples = o.samples;
    if (given(cmd, "--out")) config.out = o.out;
    if (given(cmd, "--pair-budget")) config.pair_budget = o.pair_budget;
    if (given(cmd, "--candidates")) config.candidates = o.candidates;
    if (given(cmd, "--instances")) config.instances = o.instances;
    if (given(cmd, "--seeds")) config.seeds = o.seeds;
    if (given(cmd, "--max-total-dim")) config.max_total_dim = o.max_total_dim;
    if (given(cmd, "--d")) config.d = o.d;
    if (given(cmd, "--noise")) config.noise = o.noise;
    if (given(cmd, "--regular")) config.regular = o.regular;
    hsstab::apply_defaults(config);

    hsstab::ExperimentOutput output = hsstab::run_experiment(config);

    if (config.out.empty()) {
        std::cout << output.content;
    } else {
        std::ofstream out(config.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << config.out << "\n";
            return 1;
        }
        out << output.content;
    }
    std::cout << output.summary << "\n";
    if (output.bound_violation) {
        std::cerr << "error: a guaranteed bound was violated (see output rows)\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("HSSTAB_THREADS")) {
#ifdef _OPENMP
        const int count = std::atoi(threads);
        if (count > 0) omp_set_num_threads(count);
#endif
    }

    CLI::App app{"hsstab: approximate finite-group representations under the normalized "
                 "Hilbert-Schmidt norm"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* defect = app.add_subcommand("defect", "corner-compression defect vs the 4/sqrt(n-1) bound");
    CLI::App* separation =
        app.add_subcommand("separation", "distance from corner reps to sampled true representations");
    CLI::App* correct = app.add_subcommand("correct", "correction pipeline with certified delta bound");
    CLI::App* decomp = app.add_subcommand("decompose", "complete-reducibility round trips");
    for (CLI::App* cmd : {defect, separation, correct, decomp}) add_common_options(cmd, o);
    separation->add_option("--candidates", o.candidates, "number of sampled candidate representations");
    correct->add_option("--seeds", o.seeds, "number of synthetic witnesses");
    correct->add_option("--noise", o.noise, "base noise level for synthetic witnesses");
    correct->add_option("--d", o.d, "irrep dimension bound (0 = derive from the group)");
    decomp->add_option("--instances", o.instances, "number of planted instances");
    decomp->add_option("--max-total-dim", o.max_total_dim, "planted total dimension budget");
    decomp->add_flag("--regular", o.regular, "also decompose the regular representation");

    CLI11_PARSE(app, argc, argv);

    try {
        for (CLI::App* cmd : {defect, separation, correct, decomp})
            if (cmd->parsed()) return run(cmd->get_name(), cmd, o);
        return 1;
    } catch (const hsstab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const hsstab::SvdError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const hsstab::EigenError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const hsstab::DecompositionError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const hsstab::CorrectionError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
