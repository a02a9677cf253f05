#pragma once

#include "hsstab/kernels.hpp"
#include "hsstab/matrix.hpp"

namespace hsstab {

// Tolerances scale with dimension; comfortably above double-precision
// accumulation at the dimensions this library targets (<= ~256).
inline constexpr double kUnitarityTolPerDim = 1e-10;
inline constexpr double kReconstructionTolPerDim = 1e-10;

inline double unitarity_tolerance(int dim) { return kUnitarityTolPerDim * dim; }

// hs_norm(M^H M - I). Measures how far M's columns are from orthonormal.
double unitarity_residual(const Matrix& m);

// Square matrix certified unitary at construction.
class UnitaryMatrix {
public:
    static UnitaryMatrix checked(Matrix m);
    // For matrices unitary by construction (SVD factors, products of
    // unitaries); skips the n^3 validation.
    static UnitaryMatrix trusted(Matrix m);

    int dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }

private:
    explicit UnitaryMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

// m x n matrix (m >= n) with orthonormal columns.
class Isometry {
public:
    static Isometry checked(Matrix m);
    static Isometry trusted(Matrix m);

    int from_dim() const { return mat_.cols(); }
    int to_dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }

private:
    explicit Isometry(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

}  // namespace hsstab
