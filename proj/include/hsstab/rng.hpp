#pragma once

#include <cstdint>
#include <random>

#include "hsstab/matrix.hpp"
#include "hsstab/unitary.hpp"

namespace hsstab {

// All randomness in the library flows through this wrapper. The gaussian and
// uniform transforms are hand-rolled on top of mt19937_64 so that streams are
// reproducible independent of the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in (0, 1].
    double uniform01() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal via Box-Muller (one cached value).
    double gaussian();

    // Complex standard normal: independent N(0, 1/2) real and imaginary parts.
    cplx cgaussian() { return cplx(gaussian(), gaussian()) * 0x1.6a09e667f3bcdp-1;  /* 1/sqrt(2) */ }

private:
    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Deterministic seed derivation for sub-streams (splitmix64 over the mixed
// words).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Complex Gaussian matrix with iid entries.
Matrix random_gaussian_matrix(int rows, int cols, Rng& rng);

// Random Hermitian matrix, entries O(1).
Matrix random_hermitian(int dim, Rng& rng);

// Haar-distributed unitary: modified Gram-Schmidt of a Gaussian matrix with
// positive real diagonal in the implicit triangular factor.
UnitaryMatrix random_unitary(int dim, std::uint64_t seed);

// Haar isometry C^n -> C^m (m x n matrix, orthonormal columns). Rejects m < n.
Isometry random_isometry(int from_dim, int to_dim, std::uint64_t seed);

}  // namespace hsstab
