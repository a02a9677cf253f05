#include "hsstab/unitary.hpp"

namespace hsstab {

double unitarity_residual(const Matrix& m) {
    Matrix g = multiply(m.adjoint(), m);
    for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return hs_norm(g);
}

UnitaryMatrix UnitaryMatrix::checked(Matrix m) {
    if (!m.square()) throw std::invalid_argument("UnitaryMatrix: not square");
    if (!all_finite(m)) throw std::invalid_argument("UnitaryMatrix: non-finite entries");
    const double res = unitarity_residual(m);
    if (res > unitarity_tolerance(m.rows()))
        throw std::invalid_argument("UnitaryMatrix: unitarity residual " + std::to_string(res) +
                                    " exceeds tolerance");
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::trusted(Matrix m) {
    if (!m.square()) throw std::invalid_argument("UnitaryMatrix: not square");
    return UnitaryMatrix(std::move(m));
}

Isometry Isometry::checked(Matrix m) {
    if (m.rows() < m.cols() || m.cols() < 1) throw std::invalid_argument("Isometry: need rows >= cols >= 1");
    if (!all_finite(m)) throw std::invalid_argument("Isometry: non-finite entries");
    const double res = unitarity_residual(m);
    if (res > unitarity_tolerance(m.cols()))
        throw std::invalid_argument("Isometry: orthonormality residual " + std::to_string(res) +
                                    " exceeds tolerance");
    return Isometry(std::move(m));
}

Isometry Isometry::trusted(Matrix m) {
    if (m.rows() < m.cols() || m.cols() < 1) throw std::invalid_argument("Isometry: need rows >= cols >= 1");
    return Isometry(std::move(m));
}

}  // namespace hsstab
