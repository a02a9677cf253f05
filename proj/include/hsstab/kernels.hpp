#pragma once

#include <cstdint>
#include <algorithm>
#include <utility>

#include "hsstab/matrix.hpp"

// Data-parallel kernels used throughout the library, each with an OpenMP
// implementation and a serial reference kept for testing. The parallel
// versions are written so that results do not depend on thread count or
// schedule: max-reductions are exact, and per-entry accumulations keep a
// fixed summation order.

namespace hsstab {

// Serial reference implementations. Bit-identical to the parallel kernels
// where the arithmetic order is the same (multiply, max scans); tests compare
// the two.
namespace ref {

Matrix multiply(const Matrix& a, const Matrix& b);

template <class Fn>
double max_over(std::int64_t count, Fn&& fn) {
    double best = 0.0;
    for (std::int64_t k = 0; k < count; ++k) best = std::max(best, fn(k));
    return best;
}

}  // namespace ref

// Parallel matrix product. Rows of the output are computed independently;
// each entry accumulates over the inner index in a fixed order, so the result
// matches ref::multiply bit for bit.
Matrix multiply(const Matrix& a, const Matrix& b);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

// Parallel max of fn(0..count-1). fn must be pure and thread-safe.
template <class Fn>
double max_over(std::int64_t count, Fn&& fn) {
    double best = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
    for (std::int64_t k = 0; k < count; ++k) best = std::max(best, fn(k));
    return best;
}

// Heuristic used by multiply to decide whether spawning threads is worth it.
bool parallel_worthwhile(std::size_t flops);

}  // namespace hsstab
