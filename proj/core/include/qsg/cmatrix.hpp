#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qsg {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage. The single carrier type for
// operators, column vectors (n x 1) and subspace bases (n x k).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);  // zero-filled
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols);
    static CMatrix diagonal(std::span<const Complex> d);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static CMatrix column(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    CMatrix adjoint() const;            // conjugate transpose
    CMatrix col(std::size_t j) const;   // j-th column as an n x 1 matrix
    void set_col(std::size_t j, const CMatrix& column);

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex scale);

    double frobenius_norm() const;
    double max_abs() const;   // largest entry modulus
    double one_norm() const;  // maximum column sum
    bool is_finite() const;   // no NaN / Inf entries

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(Complex scale, CMatrix m) { return m *= scale; }
    friend CMatrix operator*(CMatrix m, Complex scale) { return m *= scale; }
    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);  // matrix product

    friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// A -> A^n for square A; n = 0 gives the identity.
CMatrix matrix_power(const CMatrix& m, unsigned n);

// Throw DimensionError unless m is square.
void require_square(const CMatrix& m, const char* who);
// Throw DimensionError unless a and b have identical shape.
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* who);
// Throw DomainError unless every entry of m is finite.
void require_finite(const CMatrix& m, const char* who);

}  // namespace qsg
