#include "hsstab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hsstab {

EigenDecomposition hermitian_eigen(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("hermitian_eigen: not square");
    if (!all_finite(a)) throw std::invalid_argument("hermitian_eigen: non-finite entries");
    const int n = a.rows();

    Matrix w = a;
    // Enforce exact Hermitian symmetry of the working copy.
    for (int i = 0; i < n; ++i) {
        w(i, i) = cplx(w(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (w(i, j) + std::conj(w(j, i)));
            w(i, j) = avg;
            w(j, i) = std::conj(avg);
        }
    }
    Matrix v = Matrix::identity(n);

    const double threshold = kEigenTol * max_abs(w);
    for (int sweep = 0; sweep < kEigenMaxSweeps; ++sweep) {
        long rotations = 0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = w(p, q);
                const double mag = std::abs(apq);
                if (mag <= threshold) continue;
                ++rotations;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const cplx phase = std::conj(apq) / mag;  // e^{-i arg(apq)}
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const cplx sp = s * phase;
                const cplx cp = c * phase;

                // Columns p,q of both the working matrix and the vectors.
                for (int k = 0; k < n; ++k) {
                    const cplx wkp = w(k, p);
                    const cplx wkq = w(k, q);
                    w(k, p) = c * wkp - sp * wkq;
                    w(k, q) = s * wkp + cp * wkq;
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - sp * vkq;
                    v(k, q) = s * vkp + cp * vkq;
                }
                // Rows p,q (the adjoint rotation from the left).
                for (int k = 0; k < n; ++k) {
                    const cplx wpk = w(p, k);
                    const cplx wqk = w(q, k);
                    w(p, k) = c * wpk - std::conj(sp) * wqk;
                    w(q, k) = s * wpk + std::conj(cp) * wqk;
                }
                // The rotation annihilates (p,q) and keeps the diagonal real.
                w(p, q) = cplx(0.0, 0.0);
                w(q, p) = cplx(0.0, 0.0);
                w(p, p) = cplx(app - t * mag, 0.0);
                w(q, q) = cplx(aqq + t * mag, 0.0);
            }
        }
        if (rotations == 0) {
            std::vector<double> values(n);
            for (int i = 0; i < n; ++i) values[i] = w(i, i).real();
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return values[x] > values[y]; });
            EigenDecomposition out;
            out.values.resize(n);
            out.vectors = Matrix(n, n);
            for (int k = 0; k < n; ++k) {
                out.values[k] = values[order[k]];
                for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
            }
            return out;
        }
    }
    throw EigenError("hermitian_eigen: sweep budget exhausted");
}

Matrix exp_i_hermitian(const Matrix& h, double scale) {
    EigenDecomposition eig = hermitian_eigen(h);
    const int n = h.rows();
    Matrix scaled = eig.vectors;  // columns scaled by the eigenvalue phases
    for (int k = 0; k < n; ++k) {
        const double angle = scale * eig.values[k];
        const cplx ph(std::cos(angle), std::sin(angle));
        for (int i = 0; i < n; ++i) scaled(i, k) *= ph;
    }
    return multiply(scaled, eig.vectors.adjoint());
}

}  // namespace hsstab
