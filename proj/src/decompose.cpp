#include "hsstab/decompose.hpp"

#include <algorithm>

#include "hsstab/eigen.hpp"
#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"

namespace hsstab {

Matrix commutant_sample(const UnitaryRep& rep, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0xc033));
    Matrix h0 = random_hermitian(rep.dim, rng);
    Matrix h = averaged_conjugation(*rep.group, *rep.images, *rep.images, h0);
    // Exact Hermitian symmetrization for the eigensolver.
    for (int i = 0; i < h.rows(); ++i) {
        h(i, i) = cplx(h(i, i).real(), 0.0);
        for (int j = i + 1; j < h.cols(); ++j) {
            const cplx avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = avg;
            h(j, i) = std::conj(avg);
        }
    }
    return h;
}

IrreducibilityCertificate is_irreducible(const UnitaryRep& rep) {
    const int n = rep.dim;
    const auto& gens = rep.group->generators();
    const int blocks = static_cast<int>(gens.size());

    // Stacked linear system over the generators: for the basis matrix E_ab,
    // E_ab M - M E_ab has row a equal to row b of M and column b equal to
    // minus column a of M.
    Matrix k(blocks * n * n, n * n);
    for (int s = 0; s < blocks; ++s) {
        const Matrix m = rep.image(gens[s]);
        const int base = s * n * n;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const int col = a * n + b;
                for (int j = 0; j < n; ++j) k(base + a * n + j, col) += m(b, j);
                for (int i = 0; i < n; ++i) k(base + i * n + b, col) -= m(i, a);
            }
    }

    const std::vector<double> sigma = svd_values(k);
    IrreducibilityCertificate cert;
    for (double s : sigma) {
        if (s <= kCommutantNullThreshold) {
            ++cert.commutant_dimension;
            cert.largest_null = std::max(cert.largest_null, s);
        } else {
            cert.smallest_kept = cert.smallest_kept == 0.0 ? s : std::min(cert.smallest_kept, s);
        }
    }
    cert.irreducible = cert.commutant_dimension == 1;
    return cert;
}

namespace {

// Eigenvalues are sorted descending; split where the gap exceeds the relative
// threshold. Returns cluster boundaries as [begin, end) index pairs.
std::vector<std::pair<int, int>> cluster_eigenvalues(const std::vector<double>& values, double rel_gap) {
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    std::vector<std::pair<int, int>> clusters;
    int begin = 0;
    for (int i = 0; i + 1 < static_cast<int>(values.size()); ++i) {
        if (values[i] - values[i + 1] > rel_gap * scale) {
            clusters.emplace_back(begin, i + 1);
            begin = i + 1;
        }
    }
    clusters.emplace_back(begin, static_cast<int>(values.size()));
    return clusters;
}

Matrix basis_product(const Matrix& outer, const Matrix& vectors, int col_begin, int col_end) {
    Matrix sub(vectors.rows(), col_end - col_begin);
    for (int i = 0; i < vectors.rows(); ++i)
        for (int j = col_begin; j < col_end; ++j) sub(i, j - col_begin) = vectors(i, j);
    return multiply(outer, sub);
}

struct Leaf {
    Matrix basis;  // n x d isometry onto the invariant subspace
    int discovery = 0;
};

void decompose_node(const UnitaryRep& rep, const Matrix& basis, std::uint64_t node_seed,
                    const DecomposeOptions& opts, std::vector<Leaf>& leaves) {
    UnitaryRep restricted =
        make_rep(rep.group, conjugated_images(rep.images, basis), rep.label + "|sub");
    restricted.images = materialize_if_small(rep.group, restricted.images, 8u << 20);

    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const Matrix h = commutant_sample(restricted, mix_seed(node_seed, attempt));
        const EigenDecomposition eig = hermitian_eigen(h);
        const auto clusters = cluster_eigenvalues(eig.values, opts.eigen_gap);
        if (clusters.size() > 1) {
            for (std::size_t c = 0; c < clusters.size(); ++c) {
                Matrix sub_basis = basis_product(basis, eig.vectors, clusters[c].first, clusters[c].second);
                decompose_node(rep, sub_basis, mix_seed(node_seed, 0x100 + c), opts, leaves);
            }
            return;
        }
        // Single cluster: either irreducible or an unlucky sample.
        if (is_irreducible(restricted).irreducible) {
            leaves.push_back({basis, static_cast<int>(leaves.size())});
            return;
        }
    }
    throw DecompositionError("decompose: ambiguous eigenvalue clustering after max_attempts re-samples");
}

}  // namespace

Decomposition decompose(const UnitaryRep& rep, const DecomposeOptions& opts) {
    const int n = rep.dim;
    if (n > 128) throw std::invalid_argument("decompose: dimension above the supported limit (128)");
    std::vector<Leaf> leaves;
    decompose_node(rep, Matrix::identity(n), mix_seed(opts.seed, 0xdec0), opts, leaves);

    std::stable_sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
        return a.basis.cols() < b.basis.cols();
    });

    // Assemble W^H from the leaf bases, so that pi = W^H diag(blocks) W.
    Matrix w_adj(n, n);
    int offset = 0;
    for (const Leaf& leaf : leaves) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < leaf.basis.cols(); ++j) w_adj(i, offset + j) = leaf.basis(i, j);
        offset += leaf.basis.cols();
    }
    if (offset != n) throw DecompositionError("decompose: block dimensions do not sum to the input dimension");

    Decomposition out{UnitaryMatrix::checked(w_adj.adjoint()), {}, 0.0};
    for (std::size_t k = 0; k < leaves.size(); ++k) {
        UnitaryRep block =
            make_rep(rep.group, conjugated_images(rep.images, leaves[k].basis), "block" + std::to_string(k));
        block.images = materialize_if_small(rep.group, block.images, 8u << 20);
        out.blocks.push_back(std::move(block));
    }

    std::vector<ImagesPtr> block_images;
    for (const UnitaryRep& b : out.blocks) block_images.push_back(b.images);
    ImagesPtr assembled = conjugated_images(direct_sum_images(block_images), out.conjugator.mat());
    out.residual = max_over(static_cast<std::int64_t>(rep.group->order()), [&](std::int64_t g) {
        return hs_distance(rep.image(static_cast<std::uint32_t>(g)),
                           assembled->image(static_cast<std::uint32_t>(g)));
    });
    return out;
}

Matrix intertwiner_average(const UnitaryRep& rho, const UnitaryRep& pi) {
    if (rho.dim > pi.dim) throw std::invalid_argument("intertwiner_average: rho dimension exceeds pi's");
    ImagesPtr embedded = rho.dim < pi.dim ? padded_images(rho.images, pi.dim) : rho.images;
    return averaged_conjugation(*pi.group, *embedded, *pi.images, Matrix::identity(pi.dim));
}

PlantedInstance plant_instance(const IrrepCatalog& catalog, int max_total_dim, std::uint64_t seed) {
    if (max_total_dim < 2) throw std::invalid_argument("plant_instance: max_total_dim < 2");
    Rng rng(mix_seed(seed, 0x91a7));
    const int target = 2 + static_cast<int>(rng.uniform_below(max_total_dim - 1));

    std::vector<UnitaryRep> blocks;
    std::vector<int> dims;
    int remaining = target;
    while (remaining > 0) {
        std::vector<std::size_t> fits;
        for (std::size_t k = 0; k < catalog.irreps.size(); ++k)
            if (catalog.irreps[k].dim <= remaining) fits.push_back(k);
        const std::size_t pick = fits[rng.uniform_below(fits.size())];  // characters always fit
        blocks.push_back(catalog.irreps[pick]);
        dims.push_back(catalog.irreps[pick].dim);
        remaining -= catalog.irreps[pick].dim;
    }

    UnitaryRep sum = direct_sum_rep(catalog.group, blocks);
    UnitaryRep rep = conjugated_rep(sum, random_unitary(target, rng.next_u64()).mat());
    rep.images = materialize_if_small(catalog.group, rep.images, 8u << 20);
    std::sort(dims.begin(), dims.end());
    return PlantedInstance{std::move(rep), std::move(dims)};
}

double intertwiner_invariance_residual(const UnitaryRep& rho, const UnitaryRep& pi, const Matrix& a,
                                       const std::vector<std::uint32_t>& subset) {
    ImagesPtr embedded = rho.dim < pi.dim ? padded_images(rho.images, pi.dim) : rho.images;
    auto violation = [&](std::uint32_t g) {
        return hs_distance(multiply(embedded->image(g), a), multiply(a, pi.image(g)));
    };
    if (subset.empty())
        return max_over(static_cast<std::int64_t>(pi.group->order()),
                        [&](std::int64_t g) { return violation(static_cast<std::uint32_t>(g)); });
    return max_over(static_cast<std::int64_t>(subset.size()),
                    [&](std::int64_t k) { return violation(subset[k]); });
}

}  // namespace hsstab
