#include "hsstab/kernels.hpp"

#include <stdexcept>

namespace hsstab {

namespace {

void multiply_row_range(const Matrix& a, const Matrix& b, Matrix& out, int row_begin, int row_end) {
    const int n = b.cols();
    const int inner = a.cols();
    for (int i = row_begin; i < row_end; ++i) {
        cplx* ci = out.row(i);
        const cplx* ai = a.row(i);
        for (int k = 0; k < inner; ++k) {
            const cplx aik = ai[k];
            if (aik == cplx(0.0, 0.0)) continue;
            const cplx* bk = b.row(k);
            for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

}  // namespace

namespace ref {

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    multiply_row_range(a, b, out, 0, a.rows());
    return out;
}

}  // namespace ref

bool parallel_worthwhile(std::size_t flops) { return flops >= 64 * 64 * 64; }

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    const std::size_t work = static_cast<std::size_t>(a.rows()) * a.cols() * b.cols();
    if (!parallel_worthwhile(work)) {
        multiply_row_range(a, b, out, 0, a.rows());
        return out;
    }
    const int rows = a.rows();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) multiply_row_range(a, b, out, i, i + 1);
    return out;
}

}  // namespace hsstab
