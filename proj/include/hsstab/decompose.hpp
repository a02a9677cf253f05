#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hsstab/rep.hpp"
#include "hsstab/unitary.hpp"

namespace hsstab {

// Complete-reducibility machinery: random commutant samples split a unitary
// representation into invariant subspaces; recursion plus an irreducibility
// certificate yields the block decomposition pi = W^H diag(pi_1..pi_k) W.

// (1/|G|) sum_g pi(g) H0 pi(g)^H for a seeded random Hermitian H0. Commutes
// with every pi(g) up to the rep's own exactness.
Matrix commutant_sample(const UnitaryRep& rep, std::uint64_t seed);

struct IrreducibilityCertificate {
    bool irreducible = false;
    // Numerical nullity of the stacked generator commutant equations
    // {X pi(s) - pi(s) X = 0}: the dimension of the commutant.
    int commutant_dimension = 0;
    // Largest singular value counted as zero and smallest counted as nonzero,
    // for auditing the threshold.
    double largest_null = 0.0;
    double smallest_kept = 0.0;
};

inline constexpr double kCommutantNullThreshold = 1e-8;

// True iff the commutant is 1-dimensional (numerical rank via singular
// values at kCommutantNullThreshold).
IrreducibilityCertificate is_irreducible(const UnitaryRep& rep);

struct Decomposition {
    UnitaryMatrix conjugator;        // W with pi = W^H diag(blocks) W
    std::vector<UnitaryRep> blocks;  // irreducible, sorted by (dim, discovery)
    double residual = 0.0;           // max_g hs_norm(pi(g) - W^H diag(...) W)
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecomposeOptions {
    std::uint64_t seed = 1;
    int max_attempts = 8;       // commutant re-samples before giving up
    double eigen_gap = 1e-6;    // relative eigenvalue gap that splits clusters
};

// Throws DecompositionError if clustering stays ambiguous after the attempt
// budget. Deterministic for fixed options.
Decomposition decompose(const UnitaryRep& rep, const DecomposeOptions& opts = {});

// (1/|G|) sum_g F(rho(g)) pi(g)^H where F embeds rho's dimension into the
// upper-left corner of pi's. Schur's lemma forces the result to ~0 when no
// intertwiner exists.
Matrix intertwiner_average(const UnitaryRep& rho, const UnitaryRep& pi);

// max over the given elements (all elements when empty) of
// hs_norm(F(rho(g)) A - A pi(g)).
double intertwiner_invariance_residual(const UnitaryRep& rho, const UnitaryRep& pi, const Matrix& a,
                                       const std::vector<std::uint32_t>& subset = {});

// Seeded test instance: a random direct sum of catalog irreps (total
// dimension in [2, max_total_dim]) conjugated by a Haar unitary. `dims` holds
// the planted block dimensions sorted ascending.
struct PlantedInstance {
    UnitaryRep rep;
    std::vector<int> dims;
};

PlantedInstance plant_instance(const IrrepCatalog& catalog, int max_total_dim, std::uint64_t seed);

}  // namespace hsstab
