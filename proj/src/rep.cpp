#include "hsstab/rep.hpp"
#include <unordered_map>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hsstab/rng.hpp"

namespace hsstab {

StoredImages::StoredImages(std::vector<Matrix> images) : images_(std::move(images)) {
    if (images_.empty()) throw std::invalid_argument("StoredImages: no images");
    dim_ = images_[0].rows();
    for (const Matrix& m : images_)
        if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("StoredImages: ragged dims");
}

namespace {

std::vector<cplx> roots_of_unity(std::uint32_t n) {
    std::vector<cplx> w(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n;
        w[k] = cplx(std::cos(angle), std::sin(angle));
    }
    return w;
}

class ScalarImages final : public RepImages {
public:
    explicit ScalarImages(std::function<cplx(std::uint32_t)> chi) : chi_(std::move(chi)) {}
    int dim() const override { return 1; }
    Matrix image(std::uint32_t g) const override {
        Matrix m(1, 1);
        m(0, 0) = chi_(g);
        return m;
    }

private:
    std::function<cplx(std::uint32_t)> chi_;
};

class DirectSumImages final : public RepImages {
public:
    explicit DirectSumImages(std::vector<ImagesPtr> blocks) : blocks_(std::move(blocks)) {
        if (blocks_.empty()) throw std::invalid_argument("DirectSumImages: no blocks");
        offsets_.reserve(blocks_.size());
        for (const auto& b : blocks_) {
            offsets_.push_back(dim_);
            dim_ += b->dim();
        }
    }
    int dim() const override { return dim_; }
    Matrix image(std::uint32_t g) const override {
        Matrix out(dim_, dim_);
        for (std::size_t k = 0; k < blocks_.size(); ++k) {
            const Matrix b = blocks_[k]->image(g);
            const int off = offsets_[k];
            for (int i = 0; i < b.rows(); ++i)
                for (int j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
        }
        return out;
    }

private:
    std::vector<ImagesPtr> blocks_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

// w^H inner(g) w for an n x k matrix w with orthonormal columns: square w
// conjugates, rectangular w restricts to an invariant subspace.
class ConjugatedImages final : public RepImages {
public:
    ConjugatedImages(ImagesPtr inner, Matrix w) : inner_(std::move(inner)), w_(std::move(w)) {
        if (w_.rows() != inner_->dim() || w_.cols() < 1 || w_.cols() > w_.rows())
            throw std::invalid_argument("ConjugatedImages: conjugator dimension mismatch");
        w_adj_ = w_.adjoint();
    }
    int dim() const override { return w_.cols(); }
    Matrix image(std::uint32_t g) const override {
        // (inner * w) first: the inner image is often sparse and multiply
        // skips zero rows of the left factor.
        return multiply(w_adj_, multiply(inner_->image(g), w_));
    }

private:
    ImagesPtr inner_;
    Matrix w_;
    Matrix w_adj_;
};

// Embeds a k-dim rep as the upper-left corner of a dim x dim matrix.
class PaddedImages final : public RepImages {
public:
    PaddedImages(ImagesPtr inner, int dim) : inner_(std::move(inner)), dim_(dim) {
        if (dim_ < inner_->dim()) throw std::invalid_argument("PaddedImages: target too small");
    }
    int dim() const override { return dim_; }
    Matrix image(std::uint32_t g) const override { return pad(inner_->image(g), dim_, dim_); }

private:
    ImagesPtr inner_;
    int dim_;
};

class TensorImages final : public RepImages {
public:
    TensorImages(ImagesPtr left, ImagesPtr right, std::uint32_t right_order)
        : left_(std::move(left)), right_(std::move(right)), right_order_(right_order) {}
    int dim() const override { return left_->dim() * right_->dim(); }
    Matrix image(std::uint32_t g) const override {
        return kron(left_->image(g / right_order_), right_->image(g % right_order_));
    }

private:
    ImagesPtr left_, right_;
    std::uint32_t right_order_;
};

class RegularImages final : public RepImages {
public:
    explicit RegularImages(GroupPtr group) : group_(std::move(group)) {}
    int dim() const override { return static_cast<int>(group_->order()); }
    Matrix image(std::uint32_t g) const override {
        const std::uint32_t n = group_->order();
        Matrix out(n, n);
        for (std::uint32_t h = 0; h < n; ++h) out(group_->mul(g, h), h) = 1.0;
        return out;
    }

private:
    GroupPtr group_;
};

// Dihedral 2-dim irrep: rho^r -> diag(w^{kr}, w^{-kr}), s -> coordinate swap.
class Dihedral2D final : public RepImages {
public:
    Dihedral2D(std::uint32_t m, std::uint32_t k) : m_(m), k_(k), roots_(roots_of_unity(m)) {}
    int dim() const override { return 2; }
    Matrix image(std::uint32_t x) const override {
        const std::uint32_t r = x % m_;
        const std::uint32_t f = x / m_;
        Matrix out(2, 2);
        const cplx w = roots_[(static_cast<std::uint64_t>(k_) * r) % m_];
        if (f == 0) {
            out(0, 0) = w;
            out(1, 1) = std::conj(w);
        } else {
            out(0, 1) = w;
            out(1, 0) = std::conj(w);
        }
        return out;
    }

private:
    std::uint32_t m_, k_;
    std::vector<cplx> roots_;
};

// Irrep of the mod-p Heisenberg group with central character t: the image of
// (a, b, c) is omega^{t(c-ab)} X^a D^b with X the cyclic shift and
// D = diag(omega^{-tk}).
class HeisenbergIrrep final : public RepImages {
public:
    HeisenbergIrrep(std::uint32_t p, std::uint32_t t) : p_(p), t_(t), roots_(roots_of_unity(p)) {}
    int dim() const override { return static_cast<int>(p_); }
    Matrix image(std::uint32_t g) const override {
        const std::int64_t p = p_;
        const std::int64_t a = g / (p_ * p_);
        const std::int64_t b = (g / p_) % p_;
        const std::int64_t c = g % p_;
        Matrix out(p_, p_);
        for (std::int64_t k = 0; k < p; ++k) {
            const std::int64_t j = (k + a) % p;
            std::int64_t e = ((c - a * b - k * b) % p + p) % p;
            e = (static_cast<std::int64_t>(t_) * e) % p;
            out(static_cast<int>(j), static_cast<int>(k)) = roots_[static_cast<std::size_t>(e)];
        }
        return out;
    }

private:
    std::uint32_t p_, t_;
    std::vector<cplx> roots_;
};

}  // namespace

ImagesPtr scalar_images(std::function<cplx(std::uint32_t)> chi) {
    return std::make_shared<ScalarImages>(std::move(chi));
}

ImagesPtr direct_sum_images(std::vector<ImagesPtr> blocks) {
    return std::make_shared<DirectSumImages>(std::move(blocks));
}

ImagesPtr conjugated_images(ImagesPtr inner, Matrix w) {
    return std::make_shared<ConjugatedImages>(std::move(inner), std::move(w));
}

ImagesPtr padded_images(ImagesPtr inner, int dim) {
    return std::make_shared<PaddedImages>(std::move(inner), dim);
}

ImagesPtr tensor_images(ImagesPtr left, ImagesPtr right, std::uint32_t right_order) {
    return std::make_shared<TensorImages>(std::move(left), std::move(right), right_order);
}

ImagesPtr regular_images(GroupPtr group) { return std::make_shared<RegularImages>(std::move(group)); }

ImagesPtr materialize(const GroupTable& group, const RepImages& src) {
    const std::uint32_t n = group.order();
    std::vector<Matrix> images(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t g = 0; g < count; ++g) images[g] = src.image(static_cast<std::uint32_t>(g));
    return std::make_shared<StoredImages>(std::move(images));
}

ImagesPtr materialize_if_small(GroupPtr group, ImagesPtr src, std::size_t byte_budget) {
    const std::size_t bytes = static_cast<std::size_t>(group->order()) * src->dim() * src->dim() * sizeof(cplx);
    if (bytes > byte_budget) return src;
    if (dynamic_cast<const StoredImages*>(src.get())) return src;
    return materialize(*group, *src);
}

namespace {

class CachedSubsetImages final : public RepImages {
public:
    CachedSubsetImages(ImagesPtr src, const std::vector<std::uint32_t>& elements) : src_(std::move(src)) {
        std::vector<std::uint32_t> unique = elements;
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        std::vector<Matrix> images(unique.size());
        const auto count = static_cast<std::int64_t>(unique.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t k = 0; k < count; ++k) images[k] = src_->image(unique[k]);
        for (std::size_t k = 0; k < unique.size(); ++k) cache_.emplace(unique[k], std::move(images[k]));
    }
    int dim() const override { return src_->dim(); }
    Matrix image(std::uint32_t g) const override {
        const auto it = cache_.find(g);
        return it != cache_.end() ? it->second : src_->image(g);
    }
    const Matrix* stored(std::uint32_t g) const override {
        const auto it = cache_.find(g);
        return it != cache_.end() ? &it->second : nullptr;
    }

private:
    ImagesPtr src_;
    std::unordered_map<std::uint32_t, Matrix> cache_;
};

}  // namespace

ImagesPtr cached_subset_images(ImagesPtr src, const std::vector<std::uint32_t>& elements) {
    return std::make_shared<CachedSubsetImages>(std::move(src), elements);
}

namespace {

double pair_violation(const RepImages& images, const GroupTable& group, std::uint32_t g, std::uint32_t h) {
    Matrix tg, th, tgh;
    const Matrix* ig = images.stored(g);
    if (!ig) {
        tg = images.image(g);
        ig = &tg;
    }
    const Matrix* ih = images.stored(h);
    if (!ih) {
        th = images.image(h);
        ih = &th;
    }
    const std::uint32_t gh = group.mul(g, h);
    const Matrix* igh = images.stored(gh);
    if (!igh) {
        tgh = images.image(gh);
        igh = &tgh;
    }
    return hs_distance(multiply(*ig, *ih), *igh);
}

}  // namespace

PairScanResult measure_defect(const GroupTable& group, const RepImages& images, const ScanOptions& opts) {
    PairScanResult result;
    const std::uint64_t n = group.order();
    if (n * n <= opts.pair_budget) {
        result.mode = ScanMode::Exact;
        result.pairs_evaluated = n * n;
        result.max_violation = max_over(static_cast<std::int64_t>(n * n), [&](std::int64_t k) {
            return pair_violation(images, group, static_cast<std::uint32_t>(k / n),
                                  static_cast<std::uint32_t>(k % n));
        });
        return result;
    }
    result.mode = ScanMode::Sampled;
    result.seed = opts.seed;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (opts.generator_pairs)
        for (std::uint32_t s : group.generators())
            for (std::uint32_t g = 0; g < n; ++g) pairs.emplace_back(s, g);
    Rng rng(mix_seed(opts.seed, 0xdefc));
    for (std::uint64_t k = 0; k < opts.sample_pairs; ++k)
        pairs.emplace_back(static_cast<std::uint32_t>(rng.uniform_below(n)),
                           static_cast<std::uint32_t>(rng.uniform_below(n)));
    result.pairs_evaluated = pairs.size();
    result.max_violation = max_over(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t k) {
        return pair_violation(images, group, pairs[k].first, pairs[k].second);
    });
    return result;
}

double check_homomorphism(UnitaryRep& rep, const ScanOptions& opts) {
    rep.hom_scan = measure_defect(*rep.group, *rep.images, opts);
    return rep.hom_scan->max_violation;
}

double measure_defect(ApproxRep& rep, const ScanOptions& opts) {
    rep.defect_scan = measure_defect(*rep.group, *rep.images, opts);
    rep.defect = rep.defect_scan.max_violation;
    return rep.defect;
}

UnitaryRep make_rep(GroupPtr group, ImagesPtr images, std::string label) {
    UnitaryRep rep;
    rep.group = std::move(group);
    rep.dim = images->dim();
    rep.images = std::move(images);
    rep.label = std::move(label);
    return rep;
}

UnitaryRep direct_sum_rep(GroupPtr group, const std::vector<UnitaryRep>& blocks) {
    std::vector<ImagesPtr> images;
    std::string label;
    for (const UnitaryRep& b : blocks) {
        images.push_back(b.images);
        if (!label.empty()) label += "+";
        label += b.label;
    }
    return make_rep(std::move(group), direct_sum_images(std::move(images)), std::move(label));
}

UnitaryRep conjugated_rep(const UnitaryRep& inner, Matrix w) {
    return make_rep(inner.group, conjugated_images(inner.images, std::move(w)), inner.label + "^W");
}

UnitaryRep regular_rep(GroupPtr group) {
    auto images = regular_images(group);
    return make_rep(std::move(group), std::move(images), "regular");
}

namespace {

void append_cyclic_characters(std::vector<UnitaryRep>& out, const GroupPtr& g, std::uint32_t m) {
    for (std::uint32_t k = 0; k < m; ++k) {
        auto roots = roots_of_unity(m);
        out.push_back(make_rep(
            g, scalar_images([roots = std::move(roots), k, m](std::uint32_t j) { return roots[(static_cast<std::uint64_t>(k) * j) % m]; }),
            "chi" + std::to_string(k)));
    }
}

void append_dihedral_irreps(std::vector<UnitaryRep>& out, const GroupPtr& g, std::uint32_t m) {
    // Characters: trivial + sign of the flip, plus two more when m is even.
    for (int a : m % 2 == 0 ? std::vector<int>{1, -1} : std::vector<int>{1}) {
        for (int b : {1, -1}) {
            out.push_back(make_rep(g,
                                   scalar_images([a, b, m](std::uint32_t x) {
                                       const std::uint32_t r = x % m;
                                       const std::uint32_t f = x / m;
                                       double v = 1.0;
                                       if (a < 0 && r % 2 == 1) v = -v;
                                       if (b < 0 && f == 1) v = -v;
                                       return cplx(v, 0.0);
                                   }),
                                   "chi(" + std::to_string(a) + "," + std::to_string(b) + ")"));
        }
    }
    // 2-dim irreps: rho^r -> diag(w^{kr}, w^{-kr}), s -> swap.
    const std::uint32_t two_dim_count = m % 2 == 0 ? m / 2 - 1 : (m - 1) / 2;
    for (std::uint32_t k = 1; k <= two_dim_count; ++k)
        out.push_back(make_rep(g, std::make_shared<Dihedral2D>(m, k), "rot" + std::to_string(k)));
}

void append_heisenberg_irreps(std::vector<UnitaryRep>& out, const GroupPtr& g, std::uint32_t p) {
    auto roots = roots_of_unity(p);
    for (std::uint32_t u = 0; u < p; ++u)
        for (std::uint32_t v = 0; v < p; ++v)
            out.push_back(make_rep(g,
                                   scalar_images([roots, u, v, p](std::uint32_t x) {
                                       const std::uint32_t a = x / (p * p);
                                       const std::uint32_t b = (x / p) % p;
                                       return roots[(static_cast<std::uint64_t>(u) * a + static_cast<std::uint64_t>(v) * b) % p];
                                   }),
                                   "chi(" + std::to_string(u) + "," + std::to_string(v) + ")"));
    for (std::uint32_t t = 1; t < p; ++t)
        out.push_back(make_rep(g, std::make_shared<HeisenbergIrrep>(p, t), "stone" + std::to_string(t)));
}

}  // namespace

IrrepCatalog irreps(GroupPtr group) {
    IrrepCatalog cat;
    cat.group = group;
    switch (group->family()) {
        case GroupTable::Family::Cyclic:
            append_cyclic_characters(cat.irreps, group, group->family_param());
            break;
        case GroupTable::Family::Dihedral:
            append_dihedral_irreps(cat.irreps, group, group->family_param());
            break;
        case GroupTable::Family::Heisenberg:
            append_heisenberg_irreps(cat.irreps, group, group->family_param());
            break;
        case GroupTable::Family::Product: {
            const IrrepCatalog left = irreps(group->product_left());
            const IrrepCatalog right = irreps(group->product_right());
            const std::uint32_t ro = group->product_right()->order();
            for (const UnitaryRep& a : left.irreps)
                for (const UnitaryRep& b : right.irreps)
                    cat.irreps.push_back(make_rep(group, tensor_images(a.images, b.images, ro),
                                                  a.label + "x" + b.label));
            break;
        }
    }
    std::uint64_t dim_square_sum = 0;
    for (const UnitaryRep& r : cat.irreps) {
        dim_square_sum += static_cast<std::uint64_t>(r.dim) * r.dim;
        cat.max_dim = std::max(cat.max_dim, r.dim);
    }
    if (dim_square_sum != group->order()) throw std::logic_error("irreps: catalog incomplete");
    return cat;
}

int max_irrep_dim(const IrrepCatalog& catalog) { return catalog.max_dim; }

Matrix averaged_conjugation(const GroupTable& group, const RepImages& left, const RepImages& right,
                            const Matrix& x) {
    const auto& basis = group.power_basis();
    // The identity conjugation is applied explicitly: corner-embedded reps are
    // multiplicative but send the identity to a projector rather than to I,
    // and that projector absorbs into every other term.
    Matrix cur =
        multiply(multiply(left.image(group.identity()), x), right.image(group.identity()).adjoint());
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
        const Matrix lk = left.image(it->element);
        const Matrix rk_adj = right.image(it->element).adjoint();
        Matrix acc = cur;
        Matrix term = cur;
        for (std::uint32_t a = 1; a < it->period; ++a) {
            term = multiply(multiply(lk, term), rk_adj);
            acc += term;
        }
        cur = std::move(acc);
    }
    return cur * cplx(1.0 / group.order(), 0.0);
}

namespace ref {

Matrix averaged_conjugation(const GroupTable& group, const RepImages& left, const RepImages& right,
                            const Matrix& x) {
    Matrix acc(left.dim(), right.dim());
    for (std::uint32_t g = 0; g < group.order(); ++g)
        acc += ref::multiply(ref::multiply(left.image(g), x), right.image(g).adjoint());
    return acc * cplx(1.0 / group.order(), 0.0);
}

}  // namespace ref

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

}  // namespace hsstab
