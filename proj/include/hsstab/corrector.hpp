#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hsstab/decompose.hpp"
#include "hsstab/rep.hpp"
#include "hsstab/unitary.hpp"

namespace hsstab {

// Correction pipeline: given an approximate representation phi of dimension
// n, a true m-dimensional representation pi and an isometry U with
// ||phi(g) - U^H pi(g) U|| < 161 eps, produce a genuine n-dimensional
// representation rho with sup ||phi - rho|| < delta(eps, d).

// delta = 161 eps + 100 ((sqrt(2)+1) sqrt(1+2500 eps^2) + sqrt(d-1)) eps
double delta_bound(double eps, int d);

inline constexpr double kDotAdmission = 161.0;
inline constexpr double kClaimSlack = 1e-9;

struct DotWitness {
    GroupPtr group;
    ApproxRep phi;   // dim n, defect measured
    UnitaryRep pi;   // dim m
    Isometry embed;  // m x n
    int n = 0;
    int m = 0;
    double eps = 0.0;        // phi's defect
    double proximity = 0.0;  // max_g ||phi(g) - U^H pi(g) U||
};

// Measures proximity and validates the admission inequality
// proximity < 161 eps (up to 1e-12 for exact degenerate witnesses).
DotWitness make_dot_witness(ApproxRep phi, UnitaryRep pi, Isometry embed);

struct ClaimBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds(double slack = kClaimSlack) const { return lhs <= rhs + slack; }
};

struct CorrectionReport {
    std::string group;
    int n = 0, m = 0, d = 0;
    double eps = 0.0;
    double proximity = 0.0;
    bool shortcut = false;      // m == n branch
    bool regime = false;        // 1/n <= 2500 eps^2
    int blocks_kept = 0;        // r
    int kept_dim = 0;           // n' = d_1 + ... + d_r
    ClaimBound c36_1, c36_2, c36_3, c37_1, c37_2;
    double c36_1_projection_gap = 0.0;  // | ||I-P||^2 - (m-n)/m |
    double c36_3_pullback_gap = 0.0;    // | lhs(3) - lhs(2) |
    double sup_distance = 0.0;          // max_g ||phi(g) - rho(g)||
    double delta = 0.0;                 // delta_bound(eps, d)
    double rho_hom_residual = 0.0;
    std::uint64_t seed = 0;

    bool claims_hold(double slack = kClaimSlack) const {
        return shortcut || (c36_1.holds(slack) && c36_2.holds(slack) && c36_3.holds(slack) &&
                            c37_1.holds(slack) && c37_2.holds(slack));
    }
};

struct CorrectionError : std::runtime_error {
    CorrectionError(const std::string& what, CorrectionReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    CorrectionReport report;
};

struct CorrectOptions {
    std::uint64_t decompose_seed = 1;
    std::uint64_t report_seed = 0;  // echoed into the report
    bool throw_on_claim_violation = true;
};

struct CorrectionResult {
    UnitaryRep rho;
    CorrectionReport report;
    // Pipeline intermediates (empty on the shortcut branch): the rounding
    // unitary R with rho = R pi' R^H, and the decomposition blocks in the
    // order used by pi'. For d = 1 the columns of R are eigenvectors of every
    // rho(g) with eigenvalue chi_i(g).
    Matrix rounding;
    std::vector<UnitaryRep> blocks;
};

// d must dominate every block dimension of pi's decomposition. Throws
// DecompositionError on decomposition failure and CorrectionError when a
// claim inequality fails beyond kClaimSlack (an implementation bug, not a
// data condition).
CorrectionResult correct(const DotWitness& witness, int d, const CorrectOptions& opts = {});

// Synthetic stand-in for the flexible-stability oracle: pi a seeded direct
// sum of catalog irreps of total dimension m, U a Haar isometry, phi the
// rounded compression of pi with per-element unitary noise
// exp(i noise H_g). When m > n the noise level is calibrated upward (<= 20
// steps) until the measured defect reaches the regime floor
// sqrt(max(1, m-n)/n)/50; if calibration cannot reach it the instance falls
// back to m = n.
DotWitness synth_dot_instance(GroupPtr group, int n, int m, std::uint64_t seed, double noise_level);

}  // namespace hsstab
