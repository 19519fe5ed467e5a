#pragma once

#include <cstddef>
#include <vector>

namespace microrep {

/// Dense row-major matrix of 64-bit floats. Value type: copy/move behave
/// like any std container. Shape is fixed at construction; element access
/// is unchecked in release builds.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(size_t r) { return data_.data() + r * cols_; }
    const double* row(size_t r) const { return data_.data() + r * cols_; }

    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    void fill(double v) { data_.assign(data_.size(), v); }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const;

private:
    size_t rows_, cols_;
    std::vector<double> data_;
};

// GEMM kernels. Orientation suffixes follow BLAS habit: nn = A*B,
// nt = A*B^T, tn = A^T*B. All use axpy-style inner loops over contiguous
// rows, which auto-vectorize well; the nt case is realized by transposing
// first because dot-style inner loops measure ~4x slower here.

/// out = A (m x k) * B (k x n).
Matrix matmul(const Matrix& a, const Matrix& b);

/// out += A (m x k) * B (k x n). Shapes must already agree.
void matmul_acc(const Matrix& a, const Matrix& b, Matrix& out);

/// out = A (m x k) * B^T where B is (n x k).
Matrix matmul_nt(const Matrix& a, const Matrix& b);

/// out = A^T * B where A is (p x m), B is (p x n); result (m x n).
Matrix matmul_tn(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

/// Sum over rows: returns a 1 x n matrix of column sums.
Matrix column_sums(const Matrix& a);

} // namespace microrep
