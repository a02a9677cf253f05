#include "hsstab/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hsstab/corner.hpp"
#include "hsstab/corrector.hpp"
#include "hsstab/group.hpp"
#include "hsstab/rng.hpp"

namespace hsstab {

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentConfig load_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top-level document must be an object");

    ExperimentConfig config;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "experiment")
                config.experiment = value.get<std::string>();
            else if (key == "group")
                config.group_spec = value.get<std::string>();
            else if (key == "n")
                config.n = value.get<int>();
            else if (key == "m")
                config.m = value.get<int>();
            else if (key == "seed")
                config.seed = value.get<std::uint64_t>();
            else if (key == "mode")
                config.mode = value.get<std::string>();
            else if (key == "samples")
                config.samples = value.get<std::uint64_t>();
            else if (key == "candidates")
                config.candidates = value.get<int>();
            else if (key == "instances")
                config.instances = value.get<int>();
            else if (key == "max_total_dim")
                config.max_total_dim = value.get<int>();
            else if (key == "seeds")
                config.seeds = value.get<int>();
            else if (key == "d")
                config.d = value.get<int>();
            else if (key == "noise")
                config.noise = value.get<double>();
            else if (key == "regular")
                config.regular = value.get<bool>();
            else if (key == "pair_budget")
                config.pair_budget = value.get<std::uint64_t>();
            else if (key == "out")
                config.out = value.get<std::string>();
            else
                throw ConfigError("config: unknown field \"" + key + "\"");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: bad value for field \"" + key + "\": " + e.what());
        }
    }
    return config;
}

void apply_defaults(ExperimentConfig& config) {
    if (config.samples == 0) config.samples = config.experiment == "separation" ? 1000 : 100000;
    if (config.mode != "auto" && config.mode != "exact" && config.mode != "sampled")
        throw ConfigError("config: mode must be exact, sampled or auto");
    if (config.experiment.empty()) throw ConfigError("config: missing field \"experiment\"");
    if (config.group_spec.empty()) throw ConfigError("config: missing field \"group\"");
}

namespace {

ScanOptions defect_scan_options(const ExperimentConfig& config, const GroupTable& group) {
    ScanOptions opts;
    opts.seed = config.seed;
    opts.sample_pairs = config.samples;
    opts.pair_budget = config.pair_budget;
    const std::uint64_t order = group.order();
    if (config.mode == "exact") opts.pair_budget = order * order;
    if (config.mode == "sampled") opts.pair_budget = 0;
    return opts;
}

const char* mode_name(ScanMode mode) { return mode == ScanMode::Exact ? "exact" : "sampled"; }

}  // namespace

ExperimentOutput run_defect_experiment(const ExperimentConfig& config) {
    GroupPtr group = parse_group_spec(config.group_spec);
    IrrepCatalog catalog = irreps(group);

    std::set<int> dims;
    for (const auto& r : catalog.irreps)
        if (r.dim >= 2) dims.insert(r.dim);

    ExperimentOutput out;
    std::ostringstream csv;
    csv << "group,n,defect,bound,mode,pairs_evaluated,seed\n";
    if (dims.empty()) {
        out.content = csv.str();
        out.summary = "warning: " + group->name() + " has no irreducible representation of dimension >= 2";
        return out;
    }

    double worst_margin = -1e300;
    for (int dim : dims) {
        const UnitaryRep* pi = nullptr;
        for (const auto& r : catalog.irreps)
            if (r.dim == dim) {
                pi = &r;
                break;
            }
        CornerOptions opts;
        opts.scan = defect_scan_options(config, *group);
        ApproxRep psi = corner_eps_rep(*pi, opts);
        const double bound = corner_defect_bound(dim);
        if (psi.defect > bound + 1e-10) out.bound_violation = true;
        worst_margin = std::max(worst_margin, psi.defect - bound);
        csv << group->name() << ',' << dim << ',' << format_float(psi.defect) << ','
            << format_float(bound) << ',' << mode_name(psi.defect_scan.mode) << ','
            << psi.defect_scan.pairs_evaluated << ',' << config.seed << '\n';
    }
    out.content = csv.str();
    out.summary = "defect: " + std::to_string(dims.size()) + " row(s), worst defect-bound margin " +
                  format_float(worst_margin);
    return out;
}

ExperimentOutput run_separation_experiment(const ExperimentConfig& config) {
    GroupPtr group = parse_group_spec(config.group_spec);
    IrrepCatalog catalog = irreps(group);

    const UnitaryRep* pi = nullptr;
    for (const auto& r : catalog.irreps)
        if (r.dim == catalog.max_dim && r.dim >= 2) {
            pi = &r;
            break;
        }
    if (!pi) throw ConfigError("separation: group has no irreducible representation of dimension >= 2");
    const int n = pi->dim;
    const bool certified = n >= kSeparationRegimeMinDim;

    ExperimentOutput out;
    std::ostringstream csv;
    csv << "group,n,candidate_index,sup_distance,regime,seed\n";
    if (config.candidates <= 0) {
        out.content = csv.str();
        out.summary = "separation: no candidates requested";
        return out;
    }

    CornerOptions corner_opts;
    corner_opts.scan = defect_scan_options(config, *group);
    ApproxRep psi = corner_eps_rep(*pi, corner_opts);

    ProbeOptions probe;
    probe.seed = mix_seed(config.seed, 0xe15);
    if (config.mode == "exact" || (config.mode == "auto" && group->order() <= 4096)) {
        probe.mode = ScanMode::Exact;
    } else {
        probe.mode = ScanMode::Sampled;
        probe.samples = config.samples;
        // Share the corner evaluations across candidates.
        auto elements = sample_elements(*group, probe.samples, probe.seed);
        elements.push_back(group->identity());
        for (std::uint32_t s : group->generators()) elements.push_back(s);
        psi.images = cached_subset_images(psi.images, elements);
    }

    double min_sup = 1e300;
    double max_intertwiner = 0.0;
    for (int ci = 0; ci < config.candidates; ++ci) {
        UnitaryRep candidate = sample_candidate_rep(catalog, n - 1, mix_seed(config.seed, ci));
        SeparationCertificate cert = separation_certificate(psi, candidate, *pi, probe);
        min_sup = std::min(min_sup, cert.sup_distance);
        max_intertwiner = std::max(max_intertwiner, cert.intertwiner_norm);
        if (certified && cert.sup_distance < 0.5) out.bound_violation = true;
        if (cert.intertwiner_norm > 1e-8) out.bound_violation = true;
        csv << group->name() << ',' << n << ',' << ci << ',' << format_float(cert.sup_distance) << ','
            << (certified ? "certified" : "observational") << ',' << config.seed << '\n';
    }
    out.content = csv.str();
    out.summary = "separation: min sup_distance " + format_float(min_sup) + " over " +
                  std::to_string(config.candidates) + " candidates (" +
                  (certified ? "certified" : "observational") + "), max intertwiner norm " +
                  format_float(max_intertwiner);
    return out;
}

ExperimentOutput run_correction_experiment(const ExperimentConfig& config) {
    GroupPtr group = parse_group_spec(config.group_spec);
    if (config.n < 1) throw ConfigError("correct: field \"n\" must be >= 1");
    IrrepCatalog catalog = irreps(group);
    const int d = config.d > 0 ? config.d : max_irrep_dim(catalog);

    ExperimentOutput out;
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    double max_ratio = 0.0;
    for (int s = 0; s < config.seeds; ++s) {
        const std::uint64_t witness_seed = mix_seed(config.seed, s);
        const int m = config.m > 0 ? config.m : config.n + s % 3;
        DotWitness witness = synth_dot_instance(group, config.n, m, witness_seed, config.noise);
        CorrectOptions copts;
        copts.decompose_seed = mix_seed(witness_seed, 0xdc);
        copts.report_seed = witness_seed;
        copts.throw_on_claim_violation = false;
        CorrectionResult res = correct(witness, d, copts);
        const CorrectionReport& r = res.report;

        if (!r.claims_hold()) out.bound_violation = true;
        if (r.regime && !r.shortcut && !(r.sup_distance < r.delta + kClaimSlack)) out.bound_violation = true;
        if (r.rho_hom_residual > 1e-8) out.bound_violation = true;
        if (r.delta > 0.0) max_ratio = std::max(max_ratio, r.sup_distance / r.delta);

        nlohmann::ordered_json claims = nlohmann::ordered_json::object();
        if (!r.shortcut) {
            auto claim = [](const ClaimBound& c) {
                return nlohmann::ordered_json{{"lhs", c.lhs}, {"rhs", c.rhs}};
            };
            claims["c36_1"] = claim(r.c36_1);
            claims["c36_2"] = claim(r.c36_2);
            claims["c36_3"] = claim(r.c36_3);
            claims["c37_1"] = claim(r.c37_1);
            claims["c37_2"] = claim(r.c37_2);
        }
        reports.push_back(nlohmann::ordered_json{{"group", r.group},
                                                 {"n", r.n},
                                                 {"m", r.m},
                                                 {"d", r.d},
                                                 {"eps", r.eps},
                                                 {"proximity", r.proximity},
                                                 {"shortcut", r.shortcut},
                                                 {"claims", claims},
                                                 {"sup_distance", r.sup_distance},
                                                 {"delta_bound", r.delta},
                                                 {"seed", r.seed}});
    }
    out.content = reports.dump(1) + "\n";
    out.summary = "correct: " + std::to_string(config.seeds) +
                  " witness(es), max sup_distance/delta_bound ratio " + format_float(max_ratio);
    return out;
}

ExperimentOutput run_decompose_roundtrip(const ExperimentConfig& config) {
    GroupPtr group = parse_group_spec(config.group_spec);
    IrrepCatalog catalog = irreps(group);

    ExperimentOutput out;
    std::ostringstream csv;
    csv << "instance,planted_dims,recovered_dims,residual,seed\n";

    auto dims_string = [](const std::vector<int>& dims) {
        std::string s;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (k > 0) s += '+';
            s += std::to_string(dims[k]);
        }
        return s;
    };

    int recovered_count = 0;
    int total = 0;
    if (config.regular) {
        UnitaryRep reg = regular_rep(group);
        Decomposition dec = decompose(reg, DecomposeOptions{mix_seed(config.seed, 0x1e9), 8, 1e-6});
        std::vector<int> planted;  // multiplicity of each irrep equals its dimension
        for (const auto& r : catalog.irreps)
            for (int k = 0; k < r.dim; ++k) planted.push_back(r.dim);
        std::sort(planted.begin(), planted.end());
        std::vector<int> recovered;
        for (const auto& b : dec.blocks) recovered.push_back(b.dim);
        ++total;
        const bool match = planted == recovered && dec.residual <= 1e-8;
        if (match) ++recovered_count;
        if (!match) out.bound_violation = true;
        csv << "regular," << dims_string(planted) << ',' << dims_string(recovered) << ','
            << format_float(dec.residual) << ',' << config.seed << '\n';
    }
    for (int i = 0; i < config.instances; ++i) {
        PlantedInstance inst = plant_instance(catalog, config.max_total_dim, mix_seed(config.seed, i));
        Decomposition dec = decompose(inst.rep, DecomposeOptions{mix_seed(config.seed, 0x700 + i), 8, 1e-6});
        std::vector<int> recovered;
        for (const auto& b : dec.blocks) recovered.push_back(b.dim);
        ++total;
        const bool match = inst.dims == recovered && dec.residual <= 1e-8;
        if (match) ++recovered_count;
        if (!match) out.bound_violation = true;
        csv << i << ',' << dims_string(inst.dims) << ',' << dims_string(recovered) << ','
            << format_float(dec.residual) << ',' << config.seed << '\n';
    }
    out.content = csv.str();
    out.summary = "decompose: " + std::to_string(recovered_count) + "/" + std::to_string(total) +
                  " instances recovered";
    return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    if (config.experiment == "defect") return run_defect_experiment(config);
    if (config.experiment == "separation") return run_separation_experiment(config);
    if (config.experiment == "correct") return run_correction_experiment(config);
    if (config.experiment == "decompose") return run_decompose_roundtrip(config);
    throw ConfigError("config: unknown experiment \"" + config.experiment + "\"");
}

}  // namespace hsstab
