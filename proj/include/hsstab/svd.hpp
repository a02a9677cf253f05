#pragma once

#include <stdexcept>
#include <vector>

#include "hsstab/matrix.hpp"
#include "hsstab/unitary.hpp"

namespace hsstab {

// One-sided Jacobi SVD for small dense complex matrices. Deterministic:
// rotations follow a fixed round-robin schedule (rounds of disjoint column
// pairs, so the parallel and serial executions are bit-identical), and a
// fixed phase convention makes the factors reproducible even for singular
// input.

struct SvdFactors {
    UnitaryMatrix left;                   // rows x rows
    std::vector<double> singular_values;  // min(rows, cols), nonincreasing, >= 0
    UnitaryMatrix right;                  // cols x cols
};

struct SvdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rotation skip threshold, relative to the interacting column norms.
inline constexpr double kSvdRelTol = 1e-14;
inline constexpr int kSvdMaxSweeps = 64;
// First coordinate of each right-singular vector above this magnitude is made
// real positive.
inline constexpr double kSvdPhaseThreshold = 1e-12;

// Full factorization a = left * diag(singular_values) * right^H.
// Throws SvdError if the sweep budget is exhausted.
SvdFactors svd(const Matrix& a);

// Singular values only (nonincreasing). Much cheaper: no vector accumulation.
std::vector<double> svd_values(const Matrix& a);

// Largest singular value.
double op_norm(const Matrix& a);

struct NearestUnitary {
    UnitaryMatrix rounded;
    // hs_norm(m^H m - I); the rounded unitary satisfies
    // hs_norm(m - rounded) <= certified_bound.
    double certified_bound;
};

// Nearest unitary in the normalized Hilbert-Schmidt metric, via the polar
// part left * right^H of the SVD.
NearestUnitary nearest_unitary(const Matrix& m);

// Same rounding without the certified bound (skips one n^3 product).
Matrix nearest_unitary_matrix(const Matrix& m);

}  // namespace hsstab
