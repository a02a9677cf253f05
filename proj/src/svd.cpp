#include "hsstab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hsstab/kernels.hpp"

namespace hsstab {

namespace {

constexpr double kRankRelTol = 1e-12;

using Round = std::vector<std::pair<int, int>>;

// Fixed round-robin (circle method) schedule: every unordered column pair
// appears exactly once per sweep, and pairs within one round are disjoint,
// so a round can be applied in parallel without races.
std::vector<Round> round_robin(int n) {
    const int padded = (n % 2 == 0) ? n : n + 1;
    std::vector<int> ring(padded);
    std::iota(ring.begin(), ring.end(), 0);
    std::vector<Round> rounds;
    for (int r = 0; r < padded - 1; ++r) {
        Round round;
        for (int k = 0; k < padded / 2; ++k) {
            const int a = ring[k];
            const int b = ring[padded - 1 - k];
            if (a >= n || b >= n) continue;
            round.emplace_back(std::min(a, b), std::max(a, b));
        }
        if (!round.empty()) rounds.push_back(std::move(round));
        const int last = ring[padded - 1];
        for (int i = padded - 1; i >= 2; --i) ring[i] = ring[i - 1];
        ring[1] = last;
    }
    return rounds;
}

// Working state: row k of `cols` holds column k of the matrix being
// orthogonalized (contiguous storage for the column operations); same layout
// for the accumulated right factor.
struct JacobiState {
    Matrix cols;   // n x m
    Matrix vcols;  // n x n when want_v
    int m = 0;
    int n = 0;
    bool want_v = false;
};

bool rotate_pair(JacobiState& st, int i, int j) {
    cplx* u = st.cols.row(i);
    cplx* v = st.cols.row(j);
    double alpha = 0.0;
    double beta = 0.0;
    cplx gamma(0.0, 0.0);
    for (int t = 0; t < st.m; ++t) {
        alpha += std::norm(u[t]);
        beta += std::norm(v[t]);
        gamma += std::conj(u[t]) * v[t];
    }
    const double g2 = std::norm(gamma);
    if (g2 <= kSvdRelTol * kSvdRelTol * alpha * beta) return false;

    const double ag = std::sqrt(g2);
    const cplx phase = std::conj(gamma) / ag;  // e^{-i arg(gamma)}
    const double tau = (beta - alpha) / (2.0 * ag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = c * t;
    const cplx sp = s * phase;
    const cplx cp = c * phase;

    for (int k = 0; k < st.m; ++k) {
        const cplx uk = u[k];
        const cplx vk = v[k];
        u[k] = c * uk - sp * vk;
        v[k] = s * uk + cp * vk;
    }
    if (st.want_v) {
        cplx* wu = st.vcols.row(i);
        cplx* wv = st.vcols.row(j);
        for (int k = 0; k < st.n; ++k) {
            const cplx uk = wu[k];
            const cplx vk = wv[k];
            wu[k] = c * uk - sp * vk;
            wv[k] = s * uk + cp * vk;
        }
    }
    return true;
}

void run_sweeps(JacobiState& st) {
    const auto schedule = round_robin(st.n);
    // Rounds synchronize at a barrier, so threading only pays off once the
    // per-round column work dwarfs it (roughly dim 256 upward).
    const bool big = static_cast<std::size_t>(st.m) * st.n >= 256 * 1024;
    for (int sweep = 0; sweep < kSvdMaxSweeps; ++sweep) {
        long rotations = 0;
        for (const Round& round : schedule) {
            const int pairs = static_cast<int>(round.size());
            long applied = 0;
#pragma omp parallel for schedule(static) reduction(+ : applied) if (big && pairs > 1)
            for (int k = 0; k < pairs; ++k)
                if (rotate_pair(st, round[k].first, round[k].second)) ++applied;
            rotations += applied;
        }
        if (rotations == 0) return;
    }
    throw SvdError("svd: sweep budget exhausted");
}

JacobiState load_columns(const Matrix& a, bool want_v) {
    JacobiState st;
    st.m = a.rows();
    st.n = a.cols();
    st.want_v = want_v;
    st.cols = Matrix(st.n, st.m);
    for (int j = 0; j < st.n; ++j)
        for (int i = 0; i < st.m; ++i) st.cols(j, i) = a(i, j);
    if (want_v) st.vcols = Matrix::identity(st.n);
    return st;
}

std::vector<double> column_norms(const JacobiState& st) {
    std::vector<double> sigma(st.n);
    for (int k = 0; k < st.n; ++k) {
        double s = 0.0;
        const cplx* p = st.cols.row(k);
        for (int t = 0; t < st.m; ++t) s += std::norm(p[t]);
        sigma[k] = std::sqrt(s);
    }
    return sigma;
}

std::vector<int> descending_order(const std::vector<double>& sigma) {
    std::vector<int> order(sigma.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sigma[a] > sigma[b]; });
    return order;
}

// Deterministic orthonormal completion: fill each empty slot with the
// standard basis vector leaving the largest residual (ties -> lowest index),
// orthogonalized twice against everything already placed.
void complete_columns(Matrix& ucols, const std::vector<bool>& filled_slots, int m) {
    std::vector<int> filled;
    for (int k = 0; k < m; ++k)
        if (filled_slots[k]) filled.push_back(k);
    std::vector<bool> used(m, false);
    for (int slot = 0; slot < m; ++slot) {
        if (filled_slots[slot]) continue;
        int best = -1;
        double best_norm = -1.0;
        std::vector<cplx> best_vec;
        for (int cand = 0; cand < m; ++cand) {
            if (used[cand]) continue;
            std::vector<cplx> v(m, cplx(0.0, 0.0));
            v[cand] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (int f : filled) {
                    const cplx* u = ucols.row(f);
                    cplx dot(0.0, 0.0);
                    for (int t = 0; t < m; ++t) dot += std::conj(u[t]) * v[t];
                    for (int t = 0; t < m; ++t) v[t] -= dot * u[t];
                }
            }
            double nrm = 0.0;
            for (int t = 0; t < m; ++t) nrm += std::norm(v[t]);
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = cand;
                best_vec = std::move(v);
            }
        }
        used[best] = true;
        cplx* dst = ucols.row(slot);
        for (int t = 0; t < m; ++t) dst[t] = best_vec[t] / best_norm;
        filled.push_back(slot);
    }
}

SvdFactors svd_tall(const Matrix& a) {
    const int m = a.rows();
    const int n = a.cols();
    JacobiState st = load_columns(a, true);
    run_sweeps(st);

    std::vector<double> sigma = column_norms(st);
    const std::vector<int> order = descending_order(sigma);
    std::vector<double> sorted_sigma(n);
    for (int k = 0; k < n; ++k) sorted_sigma[k] = sigma[order[k]];
    const double smax = n > 0 ? sorted_sigma[0] : 0.0;
    const double rank_tol = smax * kRankRelTol;

    // Left factor: significant columns normalized into their sorted slots,
    // remaining slots completed deterministically.
    Matrix ucols(m, m);
    std::vector<bool> slot_filled(m, false);
    for (int k = 0; k < n; ++k) {
        if (sorted_sigma[k] <= rank_tol) continue;
        const cplx* src = st.cols.row(order[k]);
        cplx* dst = ucols.row(k);
        for (int t = 0; t < m; ++t) dst[t] = src[t] / sorted_sigma[k];
        slot_filled[k] = true;
    }
    complete_columns(ucols, slot_filled, m);

    // Right factor columns, reordered.
    Matrix vcols(n, n);
    for (int k = 0; k < n; ++k) {
        const cplx* src = st.vcols.row(order[k]);
        cplx* dst = vcols.row(k);
        for (int t = 0; t < n; ++t) dst[t] = src[t];
    }

    // Phase convention: first significant coordinate of each right-singular
    // vector made real positive; the paired left column absorbs the phase so
    // the reconstruction is unchanged.
    for (int k = 0; k < n; ++k) {
        cplx* v = vcols.row(k);
        int lead = -1;
        for (int t = 0; t < n; ++t) {
            if (std::abs(v[t]) > kSvdPhaseThreshold) {
                lead = t;
                break;
            }
        }
        if (lead < 0) continue;  // cannot happen for a unit vector at these dims
        const cplx ph = std::conj(v[lead]) / std::abs(v[lead]);
        for (int t = 0; t < n; ++t) v[t] *= ph;
        if (slot_filled[k]) {
            cplx* u = ucols.row(k);
            for (int t = 0; t < m; ++t) u[t] *= ph;
        }
    }

    Matrix left(m, m);
    for (int k = 0; k < m; ++k)
        for (int t = 0; t < m; ++t) left(t, k) = ucols(k, t);
    Matrix right(n, n);
    for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) right(t, k) = vcols(k, t);

    return SvdFactors{UnitaryMatrix::trusted(std::move(left)), std::move(sorted_sigma),
                      UnitaryMatrix::trusted(std::move(right))};
}

}  // namespace

SvdFactors svd(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("svd: empty matrix");
    if (!all_finite(a)) throw std::invalid_argument("svd: non-finite entries");
    if (a.rows() >= a.cols()) return svd_tall(a);
    // a = (a^H)^H: factor the adjoint and swap the roles of the factors.
    SvdFactors f = svd_tall(a.adjoint());
    return SvdFactors{std::move(f.right), std::move(f.singular_values), std::move(f.left)};
}

std::vector<double> svd_values(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("svd: empty matrix");
    if (!all_finite(a)) throw std::invalid_argument("svd: non-finite entries");
    JacobiState st = a.rows() >= a.cols() ? load_columns(a, false) : load_columns(a.adjoint(), false);
    run_sweeps(st);
    std::vector<double> sigma = column_norms(st);
    std::sort(sigma.begin(), sigma.end(), std::greater<double>());
    return sigma;
}

double op_norm(const Matrix& a) { return svd_values(a).front(); }

Matrix nearest_unitary_matrix(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("nearest_unitary: not square");
    SvdFactors f = svd(m);
    return multiply(f.left.mat(), f.right.mat().adjoint());
}

NearestUnitary nearest_unitary(const Matrix& m) {
    Matrix r = nearest_unitary_matrix(m);
    return NearestUnitary{UnitaryMatrix::trusted(std::move(r)), unitarity_residual(m)};
}

}  // namespace hsstab
