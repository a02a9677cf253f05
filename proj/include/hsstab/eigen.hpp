#pragma once

#include <stdexcept>
#include <vector>

#include "hsstab/matrix.hpp"
#include "hsstab/unitary.hpp"

namespace hsstab {

// Cyclic Jacobi eigensolver for complex Hermitian matrices. Serial and
// deterministic; only used on small matrices (commutant samples, matrix
// exponentials), so there is no parallel variant.

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // columns are eigenvectors, unitary
};

struct EigenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kEigenTol = 1e-13;
inline constexpr int kEigenMaxSweeps = 64;

// a must be Hermitian (the strict lower triangle is trusted to mirror the
// upper one). Satisfies a = vectors * diag(values) * vectors^H.
EigenDecomposition hermitian_eigen(const Matrix& a);

// exp(i * scale * h) for Hermitian h, via the eigendecomposition. Unitary up
// to the eigensolver tolerance.
Matrix exp_i_hermitian(const Matrix& h, double scale);

}  // namespace hsstab
