#include "hsstab/corrector.hpp"

#include <cmath>

#include "hsstab/eigen.hpp"
#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"

namespace hsstab {

double delta_bound(double eps, int d) {
    if (eps < 0.0) throw std::invalid_argument("delta_bound: negative eps");
    if (d < 1) throw std::invalid_argument("delta_bound: d < 1");
    const double root = std::sqrt(1.0 + 2500.0 * eps * eps);
    return 161.0 * eps + 100.0 * ((std::sqrt(2.0) + 1.0) * root + std::sqrt(static_cast<double>(d - 1))) * eps;
}

namespace {

double proximity_scan(const GroupTable& group, const RepImages& phi, const RepImages& compressed) {
    return max_over(static_cast<std::int64_t>(group.order()), [&](std::int64_t g) {
        const auto gg = static_cast<std::uint32_t>(g);
        const Matrix* stored = phi.stored(gg);
        if (stored) return hs_distance(*stored, compressed.image(gg));
        return hs_distance(phi.image(gg), compressed.image(gg));
    });
}

}  // namespace

DotWitness make_dot_witness(ApproxRep phi, UnitaryRep pi, Isometry embed) {
    const int n = phi.dim;
    const int m = pi.dim;
    if (embed.from_dim() != n || embed.to_dim() != m)
        throw std::invalid_argument("make_dot_witness: isometry dimensions do not match phi/pi");
    if (phi.group != pi.group) throw std::invalid_argument("make_dot_witness: group mismatch");

    ImagesPtr compressed = conjugated_images(pi.images, embed.mat());
    const double proximity = proximity_scan(*phi.group, *phi.images, *compressed);
    const double eps = phi.defect;
    // Strict inequality, relaxed only for exact degenerate witnesses where
    // both sides vanish.
    if (!(proximity < kDotAdmission * eps + 1e-12))
        throw std::invalid_argument("make_dot_witness: proximity " + std::to_string(proximity) +
                                    " >= 161 * eps with eps = " + std::to_string(eps));
    GroupPtr group = phi.group;
    return DotWitness{std::move(group), std::move(phi), std::move(pi), std::move(embed),
                      n,                m,              eps,           proximity};
}

namespace {

Matrix first_columns(const Matrix& a, int n) {
    Matrix out(a.rows(), n);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < n; ++j) out(i, j) = a(i, j);
    return out;
}

}  // namespace

CorrectionResult correct(const DotWitness& witness, int d, const CorrectOptions& opts) {
    const int n = witness.n;
    const int m = witness.m;
    const double eps = witness.eps;

    CorrectionReport report;
    report.group = witness.group->name();
    report.n = n;
    report.m = m;
    report.d = d;
    report.eps = eps;
    report.proximity = witness.proximity;
    report.delta = delta_bound(eps, d);
    report.regime = 1.0 / n <= 2500.0 * eps * eps;
    report.seed = opts.report_seed;

    const GroupTable& group = *witness.group;

    if (m == n) {
        report.shortcut = true;
        UnitaryRep rho = make_rep(witness.group, conjugated_images(witness.pi.images, witness.embed.mat()),
                                  "corrected|shortcut");
        rho.images = materialize_if_small(witness.group, rho.images);
        report.sup_distance = proximity_scan(group, *witness.phi.images, *rho.images);
        report.rho_hom_residual = measure_defect(group, *rho.images).max_violation;
        return CorrectionResult{std::move(rho), std::move(report), Matrix(), {}};
    }

    // Lemma 3.1 step: block-diagonalize pi, then absorb the conjugator into
    // the isometry.
    Decomposition dec = decompose(witness.pi, DecomposeOptions{opts.decompose_seed, 8, 1e-6});
    int max_block = 0;
    for (const auto& b : dec.blocks) max_block = std::max(max_block, b.dim);
    if (max_block > d)
        throw std::invalid_argument("correct: block dimension " + std::to_string(max_block) +
                                    " exceeds the supplied d = " + std::to_string(d));

    std::vector<ImagesPtr> block_images;
    for (const auto& b : dec.blocks) block_images.push_back(b.images);
    ImagesPtr pi_diag = direct_sum_images(block_images);
    const Matrix embed_new = multiply(dec.conjugator.mat(), witness.embed.mat());  // m x n

    // P = U U^H, [P]_n its first n columns, M = U^H [P]_n.
    const Matrix p = multiply(embed_new, embed_new.adjoint());
    const Matrix pn = first_columns(p, n);
    const Matrix mmat = multiply(embed_new.adjoint(), pn);

    Matrix ip = Matrix::identity(m) - p;
    const double ip_norm = hs_norm(ip);
    report.c36_1 = {ip_norm * ip_norm, 2500.0 * eps * eps};
    report.c36_1_projection_gap = std::abs(ip_norm * ip_norm - static_cast<double>(m - n) / m);

    const double claim2_rhs = std::sqrt(1.0 + 2500.0 * eps * eps) * 50.0 * eps;
    report.c36_2 = {unitarity_residual(pn), claim2_rhs};
    report.c36_3 = {unitarity_residual(mmat), claim2_rhs};
    report.c36_3_pullback_gap = std::abs(report.c36_3.lhs - report.c36_2.lhs);

    const NearestUnitary rounded = nearest_unitary(mmat);
    const Matrix& r_mat = rounded.rounded.mat();

    // pi'(g): the maximal prefix of blocks fitting inside dimension n, padded
    // with 1's on the rest of the diagonal.
    int kept = 0;
    int kept_dim = 0;
    for (const auto& b : dec.blocks) {
        if (kept_dim + b.dim > n) break;
        kept_dim += b.dim;
        ++kept;
    }
    report.blocks_kept = kept;
    report.kept_dim = kept_dim;

    std::vector<ImagesPtr> prime_parts;
    for (int k = 0; k < kept; ++k) prime_parts.push_back(dec.blocks[k].images);
    for (int k = kept_dim; k < n; ++k)
        prime_parts.push_back(scalar_images([](std::uint32_t) { return cplx(1.0, 0.0); }));
    ImagesPtr pi_prime = direct_sum_images(std::move(prime_parts));

    UnitaryRep rho = make_rep(witness.group, conjugated_images(pi_prime, r_mat.adjoint()), "corrected");
    rho.images = materialize_if_small(witness.group, rho.images);

    ImagesPtr compressed = conjugated_images(pi_diag, embed_new);
    const Matrix m_adj = mmat.adjoint();

    report.c37_1.rhs = 100.0 * eps * std::sqrt(1.0 + 2500.0 * eps * eps);
    report.c37_1.lhs = max_over(static_cast<std::int64_t>(group.order()), [&](std::int64_t g) {
        const auto gg = static_cast<std::uint32_t>(g);
        const Matrix sandwich = multiply(multiply(mmat, pi_prime->image(gg)), m_adj);
        return hs_distance(sandwich, rho.images->image(gg));
    });

    report.c37_2.rhs = 100.0 * (std::sqrt(2.0 + 5000.0 * eps * eps) + std::sqrt(static_cast<double>(d - 1))) * eps;
    report.c37_2.lhs = max_over(static_cast<std::int64_t>(group.order()), [&](std::int64_t g) {
        const auto gg = static_cast<std::uint32_t>(g);
        const Matrix sandwich = multiply(multiply(mmat, pi_prime->image(gg)), m_adj);
        return hs_distance(compressed->image(gg), sandwich);
    });

    report.sup_distance = proximity_scan(group, *witness.phi.images, *rho.images);
    report.rho_hom_residual = measure_defect(group, *rho.images).max_violation;

    if (opts.throw_on_claim_violation) {
        if (!report.claims_hold())
            throw CorrectionError("correct: a claim inequality failed beyond tolerance", report);
        if (report.regime && !(report.sup_distance < report.delta + kClaimSlack))
            throw CorrectionError("correct: sup distance exceeds the delta bound in regime", report);
    }
    return CorrectionResult{std::move(rho), std::move(report), r_mat, std::move(dec.blocks)};
}

namespace {

UnitaryRep sample_direct_sum(const IrrepCatalog& catalog, int target_dim, Rng& rng) {
    std::vector<UnitaryRep> blocks;
    int remaining = target_dim;
    while (remaining > 0) {
        std::vector<std::size_t> fits;
        for (std::size_t k = 0; k < catalog.irreps.size(); ++k)
            if (catalog.irreps[k].dim <= remaining) fits.push_back(k);
        const std::size_t pick = fits[rng.uniform_below(fits.size())];
        blocks.push_back(catalog.irreps[pick]);
        remaining -= catalog.irreps[pick].dim;
    }
    return direct_sum_rep(catalog.group, blocks);
}

ApproxRep build_phi(GroupPtr group, const UnitaryRep& pi, const Isometry& embed, double noise,
                    std::uint64_t seed) {
    const std::uint32_t order = group->order();
    const int m = pi.dim;
    std::vector<Matrix> images(order);
    const Matrix u = embed.mat();
    const Matrix u_adj = u.adjoint();
    for (std::uint32_t g = 0; g < order; ++g) {
        Matrix noisy = pi.image(g);
        if (noise > 0.0) {
            Rng rng(mix_seed(seed, 0x4000 + g));
            Matrix h = random_hermitian(m, rng);
            EigenDecomposition eig = hermitian_eigen(h);
            double top = 0.0;
            for (double v : eig.values) top = std::max(top, std::abs(v));
            if (top > 0.0) {
                Matrix scaled = eig.vectors;
                for (int k = 0; k < m; ++k) {
                    const double angle = noise * eig.values[k] / top;
                    const cplx ph(std::cos(angle), std::sin(angle));
                    for (int i = 0; i < m; ++i) scaled(i, k) *= ph;
                }
                noisy = multiply(noisy, multiply(scaled, eig.vectors.adjoint()));
            }
        }
        images[g] = nearest_unitary_matrix(multiply(u_adj, multiply(noisy, u)));
    }
    ApproxRep phi;
    phi.group = std::move(group);
    phi.dim = embed.from_dim();
    phi.images = std::make_shared<StoredImages>(std::move(images));
    phi.label = "synthetic";
    measure_defect(phi, ScanOptions{});
    return phi;
}

}  // namespace

DotWitness synth_dot_instance(GroupPtr group, int n, int m, std::uint64_t seed, double noise_level) {
    if (n < 1 || m < n) throw std::invalid_argument("synth_dot_instance: need m >= n >= 1");
    IrrepCatalog catalog = irreps(group);
    Rng rng(mix_seed(seed, 0x3717));
    UnitaryRep pi = sample_direct_sum(catalog, m, rng);
    pi.images = materialize_if_small(group, pi.images);
    Isometry embed = random_isometry(n, m, mix_seed(seed, 0x15));

    ApproxRep phi = build_phi(group, pi, embed, noise_level, seed);

    if (m > n) {
        // Claim 3.6's regime needs 2500 eps^2 >= max(1/n, (m-n)/n).
        const double eps_floor =
            std::sqrt(std::max(1.0, static_cast<double>(m - n)) / n) / 50.0 * (1.0 + 1e-9);
        if (phi.defect < eps_floor) {
            double lo = noise_level;
            double hi = std::max(0.05, 2.0 * noise_level);
            int steps = 0;
            double hi_defect = 0.0;
            while (steps < 10) {
                ++steps;
                hi_defect = build_phi(group, pi, embed, hi, seed).defect;
                if (hi_defect >= eps_floor) break;
                lo = hi;
                hi *= 2.0;
            }
            if (hi_defect < eps_floor)
                return synth_dot_instance(std::move(group), n, n, seed, noise_level);  // fallback to m = n
            while (steps < 20) {
                ++steps;
                const double mid = 0.5 * (lo + hi);
                if (build_phi(group, pi, embed, mid, seed).defect >= eps_floor)
                    hi = mid;
                else
                    lo = mid;
            }
            phi = build_phi(group, pi, embed, hi, seed);
        }
    }

    return make_dot_witness(std::move(phi), std::move(pi), std::move(embed));
}

}  // namespace hsstab
