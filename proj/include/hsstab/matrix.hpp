#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hsstab {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Dimensions are fixed at construction;
// entries are mutable. All numerical code in this project goes through this
// one type.
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("Matrix: negative dimension");
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0, 0.0));
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    cplx* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const cplx* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx scale);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }

    bool same_shape(const Matrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

// Normalized Hilbert-Schmidt norm: sqrt(sum |a_ij|^2 / rows). For non-square
// input the normalization divides by the row count.
double hs_norm(const Matrix& a);

// hs_norm(a - b) without forming the difference.
double hs_distance(const Matrix& a, const Matrix& b);

// Max entry magnitude; 0 for empty input.
double max_abs(const Matrix& a);

bool all_finite(const Matrix& a);

// Upper-left r x c submatrix.
Matrix corner(const Matrix& a, int r, int c);

// Embed a into the upper-left corner of a rows x cols zero matrix.
Matrix pad(const Matrix& a, int rows, int cols);

}  // namespace hsstab
