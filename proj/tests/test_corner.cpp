#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsstab/corner.hpp"
#include "hsstab/group.hpp"
#include "hsstab/rep.hpp"
#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"

using namespace hsstab;

namespace {

const UnitaryRep& pick_dim(const IrrepCatalog& cat, int dim) {
    for (const auto& r : cat.irreps)
        if (r.dim == dim) return r;
    throw std::runtime_error("no irrep of requested dim");
}

}  // namespace

TEST_CASE("rank-(n-1) coordinate projector identity") {
    for (int n : {2, 5, 8, 37}) {
        Matrix p(n, n);
        for (int i = 0; i < n - 1; ++i) p(i, i) = 1.0;
        const double val = hs_norm(Matrix::identity(n) - p);
        CHECK(val * val == doctest::Approx(1.0 / n).epsilon(1e-14));
    }
}

TEST_CASE("corner of a rep with invariant last coordinate is exact") {
    GroupPtr d4 = GroupTable::dihedral(4);
    IrrepCatalog cat = irreps(d4);
    const UnitaryRep& sigma = pick_dim(cat, 2);
    UnitaryRep padded = direct_sum_rep(d4, {sigma, cat.irreps[0]});  // sigma + trivial
    CornerOptions opts;
    opts.check_irreducible = false;  // reducible by construction
    ApproxRep psi = corner_eps_rep(padded, opts);
    CHECK(psi.dim == 2);
    CHECK(psi.defect <= 1e-12);
    for (std::uint32_t g = 0; g < d4->order(); ++g)
        CHECK(hs_distance(psi.image(g), sigma.image(g)) <= 1e-13);
}

TEST_CASE("corner_eps_rep rejects reducible input when the check is on") {
    GroupPtr z4 = GroupTable::cyclic(4);
    IrrepCatalog cat = irreps(z4);
    UnitaryRep sum = direct_sum_rep(z4, {cat.irreps[0], cat.irreps[1]});
    CHECK_THROWS(corner_eps_rep(sum));
}

TEST_CASE("heisenberg(3) corner: exhaustive defect within the bound and positive") {
    GroupPtr h = GroupTable::heisenberg(3);
    IrrepCatalog cat = irreps(h);
    const UnitaryRep& pi = pick_dim(cat, 3);
    ApproxRep psi = corner_eps_rep(pi);
    CHECK(psi.defect_scan.mode == ScanMode::Exact);
    CHECK(psi.defect_scan.pairs_evaluated == 27u * 27u);
    CHECK(psi.defect <= corner_defect_bound(3) + 1e-10);  // 4/sqrt(2)
    CHECK(psi.defect > 1e-6);
    CHECK(hs_distance(psi.image(h->identity()), Matrix::identity(2)) <= 1e-13);
    for (std::uint32_t g = 0; g < h->order(); ++g) CHECK(unitarity_residual(psi.image(g)) <= 1e-12);
}

TEST_CASE("corner proximity bound ||phi' - psi'|| <= c/sqrt(n)") {
    for (std::uint32_t p : {3u, 5u}) {
        GroupPtr h = GroupTable::heisenberg(p);
        IrrepCatalog cat = irreps(h);
        const UnitaryRep& pi = pick_dim(cat, static_cast<int>(p));
        ApproxRep psi = corner_eps_rep(pi);
        const int n = pi.dim;
        const double c = std::sqrt(static_cast<double>(n) / (n - 1));
        double worst = 0.0;
        for (std::uint32_t g = 0; g < h->order(); ++g) {
            Matrix phi = corner(pi.image(g), n - 1, n - 1);
            worst = std::max(worst, hs_distance(phi, psi.image(g)));
        }
        CHECK(worst <= c / std::sqrt(static_cast<double>(n)) + 1e-10);
    }
}

TEST_CASE("defect bound 4/sqrt(p-1) decreases while defects stay within it") {
    double previous = 1e9;
    for (std::uint32_t p : {3u, 5u, 7u}) {
        GroupPtr h = GroupTable::heisenberg(p);
        IrrepCatalog cat = irreps(h);
        ApproxRep psi = corner_eps_rep(pick_dim(cat, static_cast<int>(p)));
        const double bound = corner_defect_bound(static_cast<int>(p));
        CHECK(bound < previous);
        CHECK(psi.defect <= bound + 1e-10);
        CHECK(psi.defect > 0.0);
        previous = bound;
    }
}

TEST_CASE("monotone instability: bounds shrink with p, separation stays put") {
    // Exact pair scans through p = 11, sampled at p = 13 (the pair budget).
    double previous_bound = 1e9;
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        GroupPtr h = GroupTable::heisenberg(p);
        IrrepCatalog cat = irreps(h);
        const UnitaryRep& pi = pick_dim(cat, static_cast<int>(p));
        CornerOptions opts;
        opts.scan.sample_pairs = 200000;
        opts.scan.seed = p;
        ApproxRep psi = corner_eps_rep(pi, opts);
        const double bound = corner_defect_bound(static_cast<int>(p));
        CHECK(bound < previous_bound);
        CHECK(psi.defect <= bound + 1e-10);
        CHECK((psi.defect_scan.mode == ScanMode::Exact) == (p <= 11));
        previous_bound = bound;

        // Observed separation against a few sampled true candidates; no
        // guarantee below dimension 36, but the margin has stayed > 0.45.
        ProbeOptions probe;
        probe.mode = ScanMode::Sampled;
        probe.samples = 200;
        probe.seed = 17 + p;
        for (int ci = 0; ci < 3; ++ci) {
            UnitaryRep cand = sample_candidate_rep(cat, static_cast<int>(p) - 1, mix_seed(p, ci));
            SeparationProbe sep = separation_probe(psi, cand, probe);
            CHECK(sep.sup_distance > 0.45);
        }
    }
}

TEST_CASE("defect of exact and near-exact scalar maps") {
    GroupPtr z2 = GroupTable::cyclic(2);
    // The sign character is a true representation: defect 0.
    ApproxRep sign;
    sign.group = z2;
    sign.dim = 1;
    sign.images = scalar_images([](std::uint32_t g) { return cplx(g == 0 ? 1.0 : -1.0, 0.0); });
    CHECK(measure_defect(sign) <= 1e-15);

    // Z3 with images (1, 1, e^{i pi/3}): exhaustive max violation is sqrt(3),
    // attained at the pair (2, 2).
    GroupPtr z3 = GroupTable::cyclic(3);
    ApproxRep phased;
    phased.group = z3;
    phased.dim = 1;
    phased.images = scalar_images([](std::uint32_t g) {
        if (g < 2) return cplx(1.0, 0.0);
        return cplx(std::cos(std::numbers::pi / 3), std::sin(std::numbers::pi / 3));
    });
    const double defect = measure_defect(phased);
    // Hand oracle over all 9 pairs.
    double oracle = 0.0;
    for (std::uint32_t g = 0; g < 3; ++g)
        for (std::uint32_t h = 0; h < 3; ++h)
            oracle = std::max(oracle, std::abs(phased.image(g)(0, 0) * phased.image(h)(0, 0) -
                                               phased.image(z3->mul(g, h))(0, 0)));
    CHECK(defect == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(defect == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("defect bound is basis independent, the outputs are not") {
    GroupPtr h = GroupTable::heisenberg(3);
    IrrepCatalog cat = irreps(h);
    const UnitaryRep& pi = pick_dim(cat, 3);
    CornerOptions plain;
    ApproxRep psi = corner_eps_rep(pi, plain);
    CornerOptions rotated;
    rotated.random_basis = true;
    rotated.basis_seed = 77;
    ApproxRep psi_rot = corner_eps_rep(pi, rotated);
    CHECK(psi_rot.defect <= corner_defect_bound(3) + 1e-10);
    CHECK(psi_rot.defect > 1e-6);
    // A different basis compresses different entries (central elements have
    // scalar images and would not show it).
    const std::uint32_t x = h->generators()[0];
    CHECK(hs_distance(psi.image(x), psi_rot.image(x)) > 1e-3);
    // Same seed reproduces the rotated construction.
    ApproxRep psi_rot2 = corner_eps_rep(pi, rotated);
    CHECK(psi_rot.defect == psi_rot2.defect);
}

TEST_CASE("separation probe is zero against the rep itself") {
    GroupPtr d4 = GroupTable::dihedral(4);
    IrrepCatalog cat = irreps(d4);
    UnitaryRep padded = direct_sum_rep(d4, {pick_dim(cat, 2), cat.irreps[0]});
    CornerOptions opts;
    opts.check_irreducible = false;
    ApproxRep psi = corner_eps_rep(padded, opts);  // exact corner: equals sigma
    SeparationProbe probe = separation_probe(psi, pick_dim(cat, 2), ProbeOptions{});
    CHECK(probe.mode == ScanMode::Exact);
    CHECK(probe.elements_scanned == d4->order());
    CHECK(probe.sup_distance <= 1e-12);
}

TEST_CASE("separation certificate on heisenberg(5): observational regime") {
    GroupPtr h = GroupTable::heisenberg(5);
    IrrepCatalog cat = irreps(h);
    const UnitaryRep& pi = pick_dim(cat, 5);
    ApproxRep psi = corner_eps_rep(pi);
    UnitaryRep candidate = sample_candidate_rep(cat, 4, 7);
    SeparationCertificate cert = separation_certificate(psi, candidate, pi);
    CHECK_FALSE(cert.regime_certified);  // n = 5 < 36
    CHECK(cert.intertwiner_norm <= 1e-8);
    CHECK(cert.invariance_residual <= 1e-10);
    CHECK(cert.hull_radius_bound == doctest::Approx(0.5 + 3.0 / std::sqrt(5.0)));
    if (cert.sup_distance >= 0.5) CHECK_FALSE(cert.contradiction_required);
}

TEST_CASE("candidate sampler hits the target dimension and is exact") {
    GroupPtr h = GroupTable::heisenberg(3);
    IrrepCatalog cat = irreps(h);
    for (int target : {1, 2, 4, 7}) {
        UnitaryRep cand = sample_candidate_rep(cat, target, 99);
        CHECK(cand.dim == target);
        CHECK(check_homomorphism(cand) <= 1e-10);
    }
    // Determinism.
    UnitaryRep a = sample_candidate_rep(cat, 4, 5);
    UnitaryRep b = sample_candidate_rep(cat, 4, 5);
    for (std::uint32_t g = 0; g < h->order(); ++g) CHECK(hs_distance(a.image(g), b.image(g)) == 0.0);
}

TEST_CASE("cached subset images short-circuit the probe") {
    GroupPtr h = GroupTable::heisenberg(3);
    IrrepCatalog cat = irreps(h);
    const UnitaryRep& pi = pick_dim(cat, 3);
    ApproxRep psi = corner_eps_rep(pi);
    const auto elements = sample_elements(*h, 50, 4);
    ApproxRep cached = psi;
    cached.images = cached_subset_images(psi.images, elements);
    UnitaryRep cand = sample_candidate_rep(cat, 2, 1);
    ProbeOptions opts;
    opts.mode = ScanMode::Sampled;
    opts.samples = 50;
    opts.seed = 4;
    SeparationProbe p1 = separation_probe(psi, cand, opts);
    SeparationProbe p2 = separation_probe(cached, cand, opts);
    CHECK(p1.sup_distance == p2.sup_distance);
}
