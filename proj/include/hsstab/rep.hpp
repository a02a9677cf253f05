#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsstab/group.hpp"
#include "hsstab/kernels.hpp"
#include "hsstab/matrix.hpp"

namespace hsstab {

// Evaluates group-element images of one fixed dimension. Implementations are
// pure and thread-safe: scans parallelize over elements and pairs, so no
// backend may cache lazily inside image().
class RepImages {
public:
    virtual ~RepImages() = default;
    virtual int dim() const = 0;
    virtual Matrix image(std::uint32_t g) const = 0;
    // Non-null when the image is materialized; lets hot scans skip a copy.
    virtual const Matrix* stored(std::uint32_t) const { return nullptr; }
};

using ImagesPtr = std::shared_ptr<const RepImages>;

class StoredImages final : public RepImages {
public:
    explicit StoredImages(std::vector<Matrix> images);
    int dim() const override { return dim_; }
    Matrix image(std::uint32_t g) const override { return images_[g]; }
    const Matrix* stored(std::uint32_t g) const override { return &images_[g]; }

private:
    std::vector<Matrix> images_;
    int dim_ = 0;
};

// 1-dimensional images from a character function.
ImagesPtr scalar_images(std::function<cplx(std::uint32_t)> chi);
// Block-diagonal direct sum.
ImagesPtr direct_sum_images(std::vector<ImagesPtr> blocks);
// w^H inner(g) w; w may be a rectangular n x k isometry (subspace restriction).
ImagesPtr conjugated_images(ImagesPtr inner, Matrix w);
// Upper-left corner embedding into a larger dimension.
ImagesPtr padded_images(ImagesPtr inner, int dim);
// Tensor product over a direct-product group (left factor index = g / |right group|).
ImagesPtr tensor_images(ImagesPtr left, ImagesPtr right, std::uint32_t right_order);
// Left regular representation (permutation matrices).
ImagesPtr regular_images(GroupPtr group);

// Materialize all images up front (parallel); byte_budget guards memory.
ImagesPtr materialize(const GroupTable& group, const RepImages& src);
ImagesPtr materialize_if_small(GroupPtr group, ImagesPtr src, std::size_t byte_budget = 128u << 20);

// Precompute images on a subset of elements (parallel); other elements fall
// through to the wrapped backend. Used to share expensive evaluations across
// repeated sampled scans.
ImagesPtr cached_subset_images(ImagesPtr src, const std::vector<std::uint32_t>& elements);

// Defect / homomorphism-residual scans ------------------------------------

enum class ScanMode { Exact, Sampled };

struct PairScanResult {
    double max_violation = 0.0;
    std::uint64_t pairs_evaluated = 0;
    ScanMode mode = ScanMode::Exact;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kPairBudget = 4000000;    // exact when |G|^2 fits
inline constexpr std::uint64_t kSamplePairs = 1000000;   // sampled fallback

struct ScanOptions {
    std::uint64_t pair_budget = kPairBudget;
    std::uint64_t sample_pairs = kSamplePairs;
    std::uint64_t seed = 0;
    bool generator_pairs = true;  // sampled mode also scans all (generator, g)
};

// max over pairs (g, h) of hs_norm(img(g) img(h) - img(gh)); exact when
// |G|^2 <= pair_budget, else seeded sampling plus generator pairs.
PairScanResult measure_defect(const GroupTable& group, const RepImages& images,
                              const ScanOptions& opts = {});

// Representations ----------------------------------------------------------

struct UnitaryRep {
    GroupPtr group;
    int dim = 0;
    ImagesPtr images;
    std::string label;
    std::optional<PairScanResult> hom_scan;  // filled by check_homomorphism

    Matrix image(std::uint32_t g) const { return images->image(g); }
};

struct ApproxRep {
    GroupPtr group;
    int dim = 0;
    ImagesPtr images;
    std::string label;
    double defect = 0.0;
    PairScanResult defect_scan;

    Matrix image(std::uint32_t g) const { return images->image(g); }
};

// Measures the homomorphism residual, stores it on the rep, and returns it.
double check_homomorphism(UnitaryRep& rep, const ScanOptions& opts = {});

// Re-measure an ApproxRep's defect and store the result on it.
double measure_defect(ApproxRep& rep, const ScanOptions& opts = {});

UnitaryRep make_rep(GroupPtr group, ImagesPtr images, std::string label);
UnitaryRep direct_sum_rep(GroupPtr group, const std::vector<UnitaryRep>& blocks);
UnitaryRep conjugated_rep(const UnitaryRep& inner, Matrix w);
UnitaryRep regular_rep(GroupPtr group);

// Irreducible representation catalogs ---------------------------------------

struct IrrepCatalog {
    GroupPtr group;
    std::vector<UnitaryRep> irreps;
    int max_dim = 1;
};

// Complete catalog for the supported families. Cyclic: m characters.
// Dihedral: the 1-dim characters plus the 2-dim rotation/reflection irreps.
// Heisenberg mod p: p^2 characters plus p-1 irreps of dimension p realized by
// shift and modulation matrices. Products: tensor pairs.
IrrepCatalog irreps(GroupPtr group);

int max_irrep_dim(const IrrepCatalog& catalog);

// Group averaging ------------------------------------------------------------

// (1/|G|) sum_g left(g) X right(g)^H. Both reps must be exact homomorphisms
// (the fast path factors the sum through the group's power basis).
Matrix averaged_conjugation(const GroupTable& group, const RepImages& left, const RepImages& right,
                            const Matrix& x);

namespace ref {
// Naive enumeration over all elements; kept as the testing reference.
Matrix averaged_conjugation(const GroupTable& group, const RepImages& left, const RepImages& right,
                            const Matrix& x);
}  // namespace ref

// Kronecker product (row-major).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace hsstab
