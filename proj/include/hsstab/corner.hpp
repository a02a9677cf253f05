#pragma once

#include <cstdint>
#include <vector>

#include "hsstab/decompose.hpp"
#include "hsstab/rep.hpp"

namespace hsstab {

// Corner construction: an n-dim irreducible representation compresses to the
// upper-left (n-1)x(n-1) corner and rounds to unitaries, giving an
// approximate representation whose defect is at most 4/sqrt(n-1) yet which
// stays far from every true (n-1)-dim representation.

inline double corner_defect_bound(int n) { return 4.0 / std::sqrt(static_cast<double>(n - 1)); }

// The separation guarantee needs 1/2 + 3/sqrt(n) <= 1.
inline constexpr int kSeparationRegimeMinDim = 36;

struct CornerOptions {
    bool check_irreducible = true;  // reject reducible input
    ScanOptions scan;               // defect measurement
    // The compression keeps the coordinate basis by default so results are
    // reproducible; setting random_basis first conjugates by a seeded Haar
    // unitary (the bounds are basis-independent, the outputs are not).
    bool random_basis = false;
    std::uint64_t basis_seed = 0;
    // Each corner image costs an SVD, and the scans revisit elements many
    // times, so the cache is sized for the largest supported instance
    // (heisenberg:37 needs ~1.1 GB).
    std::size_t materialize_budget = 1536u << 20;
};

// psi'(g) = nearest unitary of the corner of pi(g); the defect is measured
// exactly or sampled according to the pair budget.
ApproxRep corner_eps_rep(const UnitaryRep& pi, const CornerOptions& opts = {});


// Candidate exact representation: catalog irreps with dimensions summing to
// target_dim, conjugated by a seeded Haar unitary. By complete reducibility
// this family covers all exact candidates up to the conjugator.
UnitaryRep sample_candidate_rep(const IrrepCatalog& catalog, int target_dim, std::uint64_t seed);

struct ProbeOptions {
    // Exact element scan by default (feasible for every supported order);
    // sampled mode draws `samples` seeded elements.
    ScanMode mode = ScanMode::Exact;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
};

struct SeparationProbe {
    double sup_distance = 0.0;  // lower bound of the true sup in sampled mode
    std::uint64_t elements_scanned = 0;
    ScanMode mode = ScanMode::Exact;
    std::uint64_t seed = 0;
};

SeparationProbe separation_probe(const ApproxRep& psi, const UnitaryRep& candidate,
                                 const ProbeOptions& opts = {});

// Evaluates the chain of inequalities behind the separation guarantee for one
// candidate: the hull radius ||I - rho(g) pi(g)^H|| against 1/2 + 3/sqrt(n),
// and the averaged intertwiner that Schur's lemma forces to ~0.
struct SeparationCertificate {
    double sup_distance = 0.0;
    bool regime_certified = false;        // n >= 36
    bool contradiction_required = false;  // sup_distance < 1/2
    double hull_radius = 0.0;
    double hull_radius_bound = 0.0;  // 1/2 + 3/sqrt(n)
    double intertwiner_norm = 0.0;   // hs_norm of the averaged intertwiner
    double invariance_residual = 0.0;
    std::uint64_t elements_scanned = 0;
    ScanMode mode = ScanMode::Exact;
};

SeparationCertificate separation_certificate(const ApproxRep& psi, const UnitaryRep& candidate,
                                             const UnitaryRep& pi, const ProbeOptions& opts = {});

// Seeded element sample shared by the probes (uniform with replacement).
std::vector<std::uint32_t> sample_elements(const GroupTable& group, std::uint64_t count,
                                           std::uint64_t seed);

}  // namespace hsstab
