#include "hsstab/corner.hpp"

#include <cmath>
#include <stdexcept>

#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"

namespace hsstab {

namespace {

class CornerRounded final : public RepImages {
public:
    explicit CornerRounded(ImagesPtr inner) : inner_(std::move(inner)), dim_(inner_->dim() - 1) {}
    int dim() const override { return dim_; }
    Matrix image(std::uint32_t g) const override {
        return nearest_unitary_matrix(corner(inner_->image(g), dim_, dim_));
    }

private:
    ImagesPtr inner_;
    int dim_;
};

}  // namespace

ApproxRep corner_eps_rep(const UnitaryRep& pi, const CornerOptions& opts) {
    if (pi.dim < 2) throw std::invalid_argument("corner_eps_rep: need dimension >= 2");
    if (opts.check_irreducible) {
        const IrreducibilityCertificate cert = is_irreducible(pi);
        if (!cert.irreducible)
            throw std::invalid_argument("corner_eps_rep: input is reducible (commutant dimension " +
                                        std::to_string(cert.commutant_dimension) + ")");
    }
    ImagesPtr source = pi.images;
    if (opts.random_basis)
        source = conjugated_images(source, random_unitary(pi.dim, opts.basis_seed).mat());
    ImagesPtr backend =
        materialize_if_small(pi.group, std::make_shared<CornerRounded>(source), opts.materialize_budget);
    ApproxRep out;
    out.group = pi.group;
    out.dim = pi.dim - 1;
    out.images = backend;
    out.label = pi.label + "|corner";
    out.defect_scan = measure_defect(*pi.group, *backend, opts.scan);
    out.defect = out.defect_scan.max_violation;
    return out;
}

UnitaryRep sample_candidate_rep(const IrrepCatalog& catalog, int target_dim, std::uint64_t seed) {
    if (target_dim < 1) throw std::invalid_argument("sample_candidate_rep: target_dim < 1");
    Rng rng(mix_seed(seed, 0xca4d));
    std::vector<UnitaryRep> blocks;
    int remaining = target_dim;
    while (remaining > 0) {
        std::vector<std::size_t> fits;
        for (std::size_t k = 0; k < catalog.irreps.size(); ++k)
            if (catalog.irreps[k].dim <= remaining) fits.push_back(k);
        const std::size_t pick = fits[rng.uniform_below(fits.size())];  // characters always fit
        blocks.push_back(catalog.irreps[pick]);
        remaining -= catalog.irreps[pick].dim;
    }
    UnitaryRep sum = direct_sum_rep(catalog.group, blocks);
    UnitaryRep candidate = conjugated_rep(sum, random_unitary(target_dim, rng.next_u64()).mat());
    candidate.label = "candidate(" + sum.label + ")";
    return candidate;
}

std::vector<std::uint32_t> sample_elements(const GroupTable& group, std::uint64_t count,
                                           std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0xe1e3));
    std::vector<std::uint32_t> out(count);
    for (std::uint64_t k = 0; k < count; ++k)
        out[k] = static_cast<std::uint32_t>(rng.uniform_below(group.order()));
    return out;
}

namespace {

template <class Fn>
SeparationProbe scan_elements(const GroupTable& group, const ProbeOptions& opts, Fn&& per_element) {
    SeparationProbe probe;
    probe.mode = opts.mode;
    probe.seed = opts.seed;
    if (opts.mode == ScanMode::Exact) {
        probe.elements_scanned = group.order();
        probe.sup_distance = max_over(static_cast<std::int64_t>(group.order()), [&](std::int64_t g) {
            return per_element(static_cast<std::uint32_t>(g));
        });
    } else {
        const auto elements = sample_elements(group, opts.samples, opts.seed);
        probe.elements_scanned = elements.size();
        probe.sup_distance = max_over(static_cast<std::int64_t>(elements.size()),
                                      [&](std::int64_t k) { return per_element(elements[k]); });
    }
    return probe;
}

}  // namespace

SeparationProbe separation_probe(const ApproxRep& psi, const UnitaryRep& candidate,
                                 const ProbeOptions& opts) {
    if (psi.dim != candidate.dim)
        throw std::invalid_argument("separation_probe: dimension mismatch");
    return scan_elements(*psi.group, opts, [&](std::uint32_t g) {
        const Matrix* stored = psi.images->stored(g);
        if (stored) return hs_distance(candidate.image(g), *stored);
        return hs_distance(candidate.image(g), psi.image(g));
    });
}

SeparationCertificate separation_certificate(const ApproxRep& psi, const UnitaryRep& candidate,
                                             const UnitaryRep& pi, const ProbeOptions& opts) {
    const int n = pi.dim;
    if (candidate.dim != n - 1 || psi.dim != n - 1)
        throw std::invalid_argument("separation_certificate: dimensions must be n-1");

    SeparationCertificate cert;
    const SeparationProbe probe = separation_probe(psi, candidate, opts);
    cert.sup_distance = probe.sup_distance;
    cert.elements_scanned = probe.elements_scanned;
    cert.mode = probe.mode;
    cert.regime_certified = n >= kSeparationRegimeMinDim;
    cert.contradiction_required = cert.sup_distance < 0.5;
    cert.hull_radius_bound = 0.5 + 3.0 / std::sqrt(static_cast<double>(n));

    ImagesPtr rho = padded_images(candidate.images, n);
    const Matrix eye = Matrix::identity(n);
    cert.hull_radius = scan_elements(*pi.group, opts, [&](std::uint32_t g) {
                           return hs_distance(multiply(rho->image(g), pi.image(g).adjoint()), eye);
                       }).sup_distance;

    const Matrix a = intertwiner_average(candidate, pi);
    cert.intertwiner_norm = hs_norm(a);
    std::vector<std::uint32_t> subset;
    if (pi.group->order() > 2000) {
        subset.push_back(pi.group->identity());
        for (std::uint32_t s : pi.group->generators()) subset.push_back(s);
    }
    cert.invariance_residual = intertwiner_invariance_residual(candidate, pi, a, subset);
    return cert;
}

}  // namespace hsstab
