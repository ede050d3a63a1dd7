#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "eqalg/rational.hpp"

namespace eqalg {

/// Dense matrix over the exact rationals. Row-major, value semantics.
/// All eliminations use exact pivoting; there is no tolerance anywhere.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix column(const std::vector<Rational>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& other) const = default;

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(const Rational& scalar) const;
    Matrix transpose() const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    /// Glue columns side by side; row counts must agree.
    static Matrix hcat(const Matrix& a, const Matrix& b);
    /// Block diagonal sum.
    static Matrix direct_sum(const Matrix& a, const Matrix& b);

    std::size_t rank() const;

    /// Inverse of a square invertible matrix; throws Error("Singular") otherwise.
    Matrix inverse() const;

    /// Basis of the right kernel as matrix columns (cols x dim_kernel).
    Matrix kernel_basis() const;

    /// Subset of this matrix's columns forming a basis of the column space.
    Matrix column_space_basis() const;

    /// Solves this * X = rhs exactly. Empty optional when inconsistent.
    /// When the solution is not unique an arbitrary particular solution
    /// is returned (free variables set to zero).
    std::optional<Matrix> solve(const Matrix& rhs) const;

    std::vector<Rational> col_vector(std::size_t c) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Matrix-vector product as a plain vector.
std::vector<Rational> apply(const Matrix& m, const std::vector<Rational>& v);

} // namespace eqalg
