#include "microrep/matrix.hpp"

#include <cmath>

#include "microrep/error.hpp"

namespace microrep {

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

static void require_shape(bool ok, const char* what) {
    if (!ok) throw ArgumentError(std::string("matrix shape mismatch in ") + what);
}

void matmul_acc(const Matrix& a, const Matrix& b, Matrix& out) {
    require_shape(a.cols() == b.rows() && out.rows() == a.rows() && out.cols() == b.cols(),
                  "matmul_acc");
    const size_t m = a.rows(), k = a.cols(), n = b.cols();
    for (size_t i = 0; i < m; ++i) {
        const double* __restrict ai = a.row(i);
        double* __restrict ci = out.row(i);
        for (size_t p = 0; p < k; ++p) {
            const double s = ai[p];
            const double* __restrict bp = b.row(p);
            for (size_t j = 0; j < n; ++j) ci[j] += s * bp[j];
        }
    }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    matmul_acc(a, b, out);
    return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    require_shape(a.cols() == b.cols(), "matmul_nt");
    return matmul(a, transpose(b));
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    require_shape(a.rows() == b.rows(), "matmul_tn");
    const size_t p = a.rows(), m = a.cols(), n = b.cols();
    Matrix out(m, n);
    for (size_t r = 0; r < p; ++r) {
        const double* __restrict ar = a.row(r);
        const double* __restrict br = b.row(r);
        for (size_t i = 0; i < m; ++i) {
            const double s = ar[i];
            double* __restrict ci = out.row(i);
            for (size_t j = 0; j < n; ++j) ci[j] += s * br[j];
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

Matrix column_sums(const Matrix& a) {
    Matrix out(1, a.cols());
    double* __restrict o = out.row(0);
    for (size_t i = 0; i < a.rows(); ++i) {
        const double* __restrict ai = a.row(i);
        for (size_t j = 0; j < a.cols(); ++j) o[j] += ai[j];
    }
    return out;
}

} // namespace microrep
