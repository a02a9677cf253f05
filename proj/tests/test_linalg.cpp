#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hsstab/eigen.hpp"
#include "hsstab/kernels.hpp"
#include "hsstab/matrix.hpp"
#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"
#include "hsstab/unitary.hpp"

using namespace hsstab;

namespace {

Matrix reconstruct(const SvdFactors& f, int rows, int cols) {
    Matrix sig(rows, cols);
    const int k = static_cast<int>(f.singular_values.size());
    for (int i = 0; i < k; ++i) sig(i, i) = f.singular_values[i];
    return multiply(multiply(f.left.mat(), sig), f.right.mat().adjoint());
}

Matrix diag2(double a, double b) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Grid-search lower bound for the operator norm of a 2x2 matrix over the unit
// sphere of C^2 parametrized (cos a, sin a e^{ib}) up to a global phase.
// Coarse grid followed by local refinement around the best cell.
double op_norm_2x2_grid(const Matrix& m) {
    auto value = [&](double a, double b) {
        const cplx v0 = std::cos(a);
        const cplx v1 = std::sin(a) * cplx(std::cos(b), std::sin(b));
        const cplx w0 = m(0, 0) * v0 + m(0, 1) * v1;
        const cplx w1 = m(1, 0) * v0 + m(1, 1) * v1;
        return std::sqrt(std::norm(w0) + std::norm(w1));
    };
    const double pi = std::numbers::pi;
    double best = 0.0, best_a = 0.0, best_b = 0.0;
    const int coarse = 600;
    for (int i = 0; i <= coarse; ++i) {
        for (int j = 0; j < 2 * coarse; ++j) {
            const double a = (pi / 2) * i / coarse;
            const double b = 2 * pi * j / (2 * coarse);
            const double val = value(a, b);
            if (val > best) {
                best = val;
                best_a = a;
                best_b = b;
            }
        }
    }
    double half_a = (pi / 2) / coarse, half_b = pi / coarse;
    for (int round = 0; round < 6; ++round) {
        const int fine = 24;
        double cur_best = best, cur_a = best_a, cur_b = best_b;
        for (int i = -fine; i <= fine; ++i) {
            for (int j = -fine; j <= fine; ++j) {
                const double a = best_a + half_a * i / fine;
                const double b = best_b + half_b * j / fine;
                const double val = value(a, b);
                if (val > cur_best) {
                    cur_best = val;
                    cur_a = a;
                    cur_b = b;
                }
            }
        }
        best = cur_best;
        best_a = cur_a;
        best_b = cur_b;
        half_a /= fine;
        half_b /= fine;
    }
    return best;
}

}  // namespace

TEST_CASE("hs_norm basic values") {
    CHECK(hs_norm(Matrix::identity(7)) == doctest::Approx(1.0).epsilon(1e-14));

    Matrix single(4, 4);
    single(0, 0) = 1.0;
    CHECK(hs_norm(single) == doctest::Approx(0.5).epsilon(1e-14));

    // I_8 minus a rank-6 coordinate projection.
    Matrix p(8, 8);
    for (int i = 0; i < 6; ++i) p(i, i) = 1.0;
    Matrix d = Matrix::identity(8) - p;
    CHECK(hs_norm(d) == doctest::Approx(std::sqrt(2.0 / 8.0)).epsilon(1e-14));

    CHECK_THROWS(hs_norm(Matrix()));
}

TEST_CASE("hs_norm of adjoint matches for square input") {
    Rng rng(42);
    Matrix a = random_gaussian_matrix(5, 5, rng);
    CHECK(std::abs(hs_norm(a) - hs_norm(a.adjoint())) <= 1e-14);
}

TEST_CASE("multiply parallel matches serial reference bit for bit") {
    Rng rng(7);
    for (int dim : {3, 17, 64, 97}) {
        Matrix a = random_gaussian_matrix(dim, dim + 1, rng);
        Matrix b = random_gaussian_matrix(dim + 1, dim, rng);
        Matrix c1 = multiply(a, b);
        Matrix c2 = ref::multiply(a, b);
        REQUIRE(c1.same_shape(c2));
        for (std::size_t k = 0; k < c1.size(); ++k) {
            CHECK(c1.data()[k].real() == c2.data()[k].real());
            CHECK(c1.data()[k].imag() == c2.data()[k].imag());
        }
    }
}

TEST_CASE("svd of a positive diagonal matrix is trivial") {
    SvdFactors f = svd(diag2(2.0, 0.5));
    CHECK(f.singular_values[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.singular_values[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(hs_distance(f.left.mat(), Matrix::identity(2)) <= 1e-13);
    CHECK(hs_distance(f.right.mat(), Matrix::identity(2)) <= 1e-13);
}

TEST_CASE("svd of a unitary has unit singular values") {
    UnitaryMatrix u = random_unitary(6, 11);
    SvdFactors f = svd(u.mat());
    for (double s : f.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd reconstruction for random rectangular input") {
    Rng rng(101);
    Matrix a = random_gaussian_matrix(5, 3, rng);
    SvdFactors f = svd(a);
    CHECK(hs_distance(reconstruct(f, 5, 3), a) <= 1e-10);
    CHECK(unitarity_residual(f.left.mat()) <= 1e-13);
    CHECK(unitarity_residual(f.right.mat()) <= 1e-13);

    Matrix b = random_gaussian_matrix(3, 5, rng);
    SvdFactors g = svd(b);
    CHECK(hs_distance(reconstruct(g, 3, 5), b) <= 1e-10);
}

TEST_CASE("svd reconstruction residual stays small up to dim 64") {
    for (int dim : {1, 2, 3, 4, 8, 16, 33, 64}) {
        Rng rng(mix_seed(500, dim));
        Matrix a = random_gaussian_matrix(dim, dim, rng);
        SvdFactors f = svd(a);
        CHECK(hs_distance(reconstruct(f, dim, dim), a) <= 1e-10);
        CHECK(hs_distance(reconstruct(f, dim, dim), a) <= kReconstructionTolPerDim * dim);
        for (std::size_t k = 0; k + 1 < f.singular_values.size(); ++k)
            CHECK(f.singular_values[k] >= f.singular_values[k + 1]);
        CHECK(f.singular_values.back() >= 0.0);
    }
}

TEST_CASE("svd is deterministic and rejects bad input") {
    Rng rng(5);
    Matrix a = random_gaussian_matrix(6, 6, rng);
    SvdFactors f1 = svd(a);
    SvdFactors f2 = svd(a);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(f1.left.mat().data()[k] == f2.left.mat().data()[k]);
        CHECK(f1.right.mat().data()[k] == f2.right.mat().data()[k]);
    }

    Matrix bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(svd(bad));
    CHECK_THROWS(svd(Matrix()));
}

TEST_CASE("svd handles rank-deficient input deterministically") {
    Matrix a(4, 4);
    a(0, 1) = cplx(0.0, 2.0);
    a(2, 3) = 1.0;  // two zero singular values
    SvdFactors f = svd(a);
    CHECK(f.singular_values[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.singular_values[2] <= 1e-13);
    CHECK(hs_distance(reconstruct(f, 4, 4), a) <= 1e-12);
    CHECK(unitarity_residual(f.left.mat()) <= 1e-13);
    CHECK(unitarity_residual(f.right.mat()) <= 1e-13);
}

TEST_CASE("intermediate inequality |sigma - 1| <= |sigma^2 - 1| on svd output") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(mix_seed(77, trial));
        const int dim = 2 + static_cast<int>(rng.uniform_below(7));
        Matrix a = random_gaussian_matrix(dim, dim, rng);
        const auto sigma = svd_values(a);
        double lhs = 0.0, rhs = 0.0;
        for (double s : sigma) {
            lhs += (s - 1.0) * (s - 1.0);
            rhs += (s * s - 1.0) * (s * s - 1.0);
        }
        CHECK(std::sqrt(lhs / dim) <= std::sqrt(rhs / dim) + 1e-15);
    }
}

TEST_CASE("op_norm examples") {
    UnitaryMatrix u = random_unitary(5, 3);
    CHECK(op_norm(u.mat()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_norm(diag2(3.0, 1.0)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("op_norm agrees with grid-search oracle at dim 2") {
    for (int trial = 0; trial < 5; ++trial) {
        Rng rng(mix_seed(900, trial));
        Matrix a = random_gaussian_matrix(2, 2, rng);
        CHECK(std::abs(op_norm(a) - op_norm_2x2_grid(a)) <= 1e-6);
    }
}

TEST_CASE("nearest_unitary identity and scaled unitary") {
    auto [r, bound] = nearest_unitary(Matrix::identity(5));
    CHECK(hs_distance(r.mat(), Matrix::identity(5)) <= 1e-13);
    CHECK(bound <= 1e-13);

    UnitaryMatrix u = random_unitary(4, 21);
    Matrix scaled = u.mat() * cplx(2.5, 0.0);
    auto [r2, bound2] = nearest_unitary(scaled);
    CHECK(hs_distance(r2.mat(), u.mat()) <= 1e-12);
    CHECK(hs_distance(scaled, r2.mat()) <= bound2);
}

TEST_CASE("nearest_unitary of diag(2, 0.5)") {
    Matrix m = diag2(2.0, 0.5);
    auto [r, bound] = nearest_unitary(m);
    CHECK(hs_distance(r.mat(), Matrix::identity(2)) <= 1e-13);
    // ||M - I||_{HS,2} = sqrt((1 + 0.25)/2), ||M^H M - I||_{HS,2} = sqrt((9 + 0.5625)/2)
    CHECK(hs_distance(m, r.mat()) == doctest::Approx(std::sqrt(0.625)).epsilon(1e-12));
    CHECK(bound == doctest::Approx(std::sqrt(4.78125)).epsilon(1e-12));
    CHECK(hs_distance(m, r.mat()) <= bound);
}

TEST_CASE("nearest_unitary certificate holds across seeds and dims") {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng(mix_seed(1234, trial));
        const int dim = 2 + static_cast<int>(rng.uniform_below(15));
        Matrix m = random_gaussian_matrix(dim, dim, rng);
        auto [r, bound] = nearest_unitary(m);
        CHECK(hs_distance(m, r.mat()) <= bound + 1e-10);
        CHECK(unitarity_residual(r.mat()) <= 1e-12 * dim);
    }
}

TEST_CASE("unitary invariance of the HS norm") {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(mix_seed(31337, trial));
        const int dim = 2 + static_cast<int>(rng.uniform_below(15));
        Matrix a = random_gaussian_matrix(dim, dim, rng);
        UnitaryMatrix u = random_unitary(dim, rng.next_u64());
        UnitaryMatrix v = random_unitary(dim, rng.next_u64());
        const double lhs = hs_norm(multiply(multiply(u.mat(), a), v.mat()));
        CHECK(std::abs(lhs - hs_norm(a)) <= 1e-12);
    }
}

TEST_CASE("mixed operator/HS bound") {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(mix_seed(8086, trial));
        const int n = 2 + static_cast<int>(rng.uniform_below(15));
        const int m = 2 + static_cast<int>(rng.uniform_below(15));
        Matrix a = random_gaussian_matrix(n, m, rng);
        Matrix b = random_gaussian_matrix(m, m, rng);
        Matrix c = random_gaussian_matrix(m, n, rng);
        const double lhs = hs_norm(multiply(multiply(a, b), c));
        const double rhs = std::sqrt(static_cast<double>(m) / n) * op_norm(a) * hs_norm(b) * op_norm(c);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("random unitary and isometry contracts") {
    UnitaryMatrix u = random_unitary(4, 99);
    CHECK(unitarity_residual(u.mat()) <= 1e-12);

    Isometry iso = random_isometry(3, 5, 99);
    CHECK(unitarity_residual(iso.mat()) <= 1e-12);
    CHECK(iso.from_dim() == 3);
    CHECK(iso.to_dim() == 5);

    UnitaryMatrix u2 = random_unitary(4, 99);
    for (std::size_t k = 0; k < u.mat().size(); ++k) CHECK(u.mat().data()[k] == u2.mat().data()[k]);

    CHECK_THROWS(random_isometry(5, 3, 1));
    CHECK_THROWS(random_unitary(0, 1));
}

TEST_CASE("UnitaryMatrix and Isometry validation") {
    CHECK_NOTHROW(UnitaryMatrix::checked(Matrix::identity(3)));
    Matrix bad = Matrix::identity(3);
    bad(0, 0) = 1.5;
    CHECK_THROWS(UnitaryMatrix::checked(bad));
    Rng rng(1);
    CHECK_THROWS(Isometry::checked(random_gaussian_matrix(3, 5, rng)));
}

TEST_CASE("hermitian eigendecomposition reconstructs and orders") {
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(mix_seed(515, trial));
        const int dim = 2 + static_cast<int>(rng.uniform_below(15));
        Matrix h = random_hermitian(dim, rng);
        EigenDecomposition eig = hermitian_eigen(h);
        Matrix lam(dim, dim);
        for (int i = 0; i < dim; ++i) lam(i, i) = eig.values[i];
        CHECK(hs_distance(multiply(multiply(eig.vectors, lam), eig.vectors.adjoint()), h) <= 1e-11);
        CHECK(unitarity_residual(eig.vectors) <= 1e-12);
        for (int i = 0; i + 1 < dim; ++i) CHECK(eig.values[i] >= eig.values[i + 1]);
    }
}

TEST_CASE("exp_i_hermitian is unitary and matches the scalar case") {
    Rng rng(4242);
    Matrix h = random_hermitian(5, rng);
    Matrix e = exp_i_hermitian(h, 0.3);
    CHECK(unitarity_residual(e) <= 1e-11);

    Matrix one(1, 1);
    one(0, 0) = 2.0;
    Matrix e1 = exp_i_hermitian(one, 0.5);
    CHECK(std::abs(e1(0, 0) - cplx(std::cos(1.0), std::sin(1.0))) <= 1e-14);
}

TEST_CASE("parallel kernels are schedule independent") {
    Rng rng(31);
    Matrix a = random_gaussian_matrix(80, 80, rng);
    Matrix b = random_gaussian_matrix(80, 80, rng);
    Matrix serial = ref::multiply(a, b);
    Matrix parallel = multiply(a, b);
    for (std::size_t k = 0; k < serial.size(); ++k) CHECK(serial.data()[k] == parallel.data()[k]);

    const double m1 = ref::max_over(1000, [](std::int64_t k) { return std::sin(static_cast<double>(k)); });
    const double m2 = max_over(1000, [](std::int64_t k) { return std::sin(static_cast<double>(k)); });
    CHECK(m1 == m2);
}
