#include "hsstab/matrix.hpp"

#include <cmath>

namespace hsstab {

Matrix& Matrix::operator+=(const Matrix& other) {
    if (!same_shape(other)) throw std::invalid_argument("Matrix +=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (!same_shape(other)) throw std::invalid_argument("Matrix -=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

double hs_norm(const Matrix& a) {
    if (a.empty()) throw std::invalid_argument("hs_norm: empty matrix");
    double sum = 0.0;
    const cplx* p = a.data();
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::norm(p[k]);
    return std::sqrt(sum / a.rows());
}

double hs_distance(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("hs_distance: shape mismatch");
    if (a.empty()) throw std::invalid_argument("hs_distance: empty matrix");
    double sum = 0.0;
    const cplx* pa = a.data();
    const cplx* pb = b.data();
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::norm(pa[k] - pb[k]);
    return std::sqrt(sum / a.rows());
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    const cplx* p = a.data();
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(p[k]));
    return m;
}

bool all_finite(const Matrix& a) {
    const cplx* p = a.data();
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!std::isfinite(p[k].real()) || !std::isfinite(p[k].imag())) return false;
    return true;
}

Matrix corner(const Matrix& a, int r, int c) {
    if (r > a.rows() || c > a.cols()) throw std::invalid_argument("corner: submatrix too large");
    Matrix out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out(i, j) = a(i, j);
    return out;
}

Matrix pad(const Matrix& a, int rows, int cols) {
    if (rows < a.rows() || cols < a.cols()) throw std::invalid_argument("pad: target too small");
    Matrix out(rows, cols);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

}  // namespace hsstab
