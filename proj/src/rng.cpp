#include "hsstab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hsstab {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x < limit) return x % bound;
    }
}

double Rng::gaussian() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(angle);
    have_cached_ = true;
    return r * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
    return g;
}

Matrix random_hermitian(int dim, Rng& rng) {
    Matrix g = random_gaussian_matrix(dim, dim, rng);
    Matrix h(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

namespace {

// Two-pass modified Gram-Schmidt over the columns. The implicit triangular
// factor has positive real diagonal, which is what makes the result Haar
// distributed for Gaussian input.
Matrix orthonormalize_columns(Matrix g) {
    const int m = g.rows();
    const int n = g.cols();
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cplx dot(0.0, 0.0);
                for (int i = 0; i < m; ++i) dot += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < m; ++i) g(i, j) -= dot * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < m; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::runtime_error("orthonormalize_columns: degenerate draw");
        for (int i = 0; i < m; ++i) g(i, j) /= nrm;
    }
    return g;
}

}  // namespace

UnitaryMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim < 1");
    Rng rng(mix_seed(seed, 0xaced));
    return UnitaryMatrix::trusted(orthonormalize_columns(random_gaussian_matrix(dim, dim, rng)));
}

Isometry random_isometry(int from_dim, int to_dim, std::uint64_t seed) {
    if (from_dim < 1) throw std::invalid_argument("random_isometry: from_dim < 1");
    if (to_dim < from_dim) throw std::invalid_argument("random_isometry: to_dim < from_dim");
    Rng rng(mix_seed(seed, 0x150a));
    return Isometry::trusted(orthonormalize_columns(random_gaussian_matrix(to_dim, from_dim, rng)));
}

}  // namespace hsstab
