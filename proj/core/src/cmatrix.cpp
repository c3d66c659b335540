#include "qsg/cmatrix.hpp"

#include <cmath>
#include <string>

#include "qsg/errors.hpp"

namespace qsg {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(std::span<const Complex> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::column(std::span<const Complex> v) {
    CMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::col(std::size_t j) const {
    CMatrix m(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
    return m;
}

void CMatrix::set_col(std::size_t j, const CMatrix& column) {
    if (column.rows() != rows_ || column.cols() != 1) {
        throw DimensionError("CMatrix::set_col: column shape mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = column(i, 0);
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require_same_shape(*this, rhs, "CMatrix::operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require_same_shape(*this, rhs, "CMatrix::operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionError("CMatrix::operator*: inner dimension mismatch");
    CMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

bool CMatrix::is_finite() const {
    for (const auto& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

CMatrix matrix_power(const CMatrix& m, unsigned n) {
    require_square(m, "matrix_power");
    CMatrix out = CMatrix::identity(m.rows());
    for (unsigned k = 0; k < n; ++k) out = out * m;
    return out;
}

void require_square(const CMatrix& m, const char* who) {
    if (!m.is_square()) {
        throw DimensionError(std::string(who) + ": matrix is not square (" +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(who) + ": shape mismatch");
    }
}

void require_finite(const CMatrix& m, const char* who) {
    if (!m.is_finite()) throw DomainError(std::string(who) + ": non-finite entries");
}

}  // namespace qsg
