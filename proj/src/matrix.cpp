#include "eqalg/matrix.hpp"

#include <algorithm>

namespace eqalg {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        require(row.size() == cols_, "BadMatrix", "ragged initializer");
        for (const auto& v : row) data_.push_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::column(const std::vector<Rational>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require(cols_ == rhs.rows_, "BadMatrix", "dimension mismatch in product");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "BadMatrix", "dimension mismatch in sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "BadMatrix", "dimension mismatch in difference");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::operator*(const Rational& scalar) const {
    Matrix out = *this;
    for (auto& v : out.data_) v *= scalar;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    return *this == identity(rows_);
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_, "BadMatrix", "row mismatch in hcat");
    Matrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, a.cols_ + j) = b.at(i, j);
    }
    return out;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return out;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelonize(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t Matrix::rank() const {
    Matrix copy = *this;
    return echelonize(copy).size();
}

Matrix Matrix::inverse() const {
    require(is_square(), "Singular", "inverse of non-square matrix");
    Matrix aug = hcat(*this, identity(rows_));
    auto pivots = echelonize(aug);
    require(pivots.size() == rows_, "Singular", "matrix is singular");
    Matrix out(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) out.at(i, j) = aug.at(i, rows_ + j);
    return out;
}

Matrix Matrix::kernel_basis() const {
    Matrix ech = *this;
    auto pivots = echelonize(ech);
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    Matrix out(cols_, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        out.at(fc, k) = 1;
        for (std::size_t p = 0; p < pivots.size(); ++p) out.at(pivots[p], k) = -ech.at(p, fc);
    }
    return out;
}

Matrix Matrix::column_space_basis() const {
    Matrix ech = *this;
    auto pivots = echelonize(ech);
    Matrix out(rows_, pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t i = 0; i < rows_; ++i) out.at(i, k) = at(i, pivots[k]);
    return out;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
    require(rows_ == rhs.rows_, "BadMatrix", "row mismatch in solve");
    Matrix aug = hcat(*this, rhs);
    auto pivots = echelonize(aug);
    // Any pivot falling in the rhs block flags inconsistency.
    for (auto p : pivots)
        if (p >= cols_) return std::nullopt;
    Matrix x(cols_, rhs.cols_);
    for (std::size_t p = 0; p < pivots.size(); ++p)
        for (std::size_t j = 0; j < rhs.cols_; ++j) x.at(pivots[p], j) = aug.at(p, cols_ + j);
    return x;
}

std::vector<Rational> Matrix::col_vector(std::size_t c) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
}

std::vector<Rational> apply(const Matrix& m, const std::vector<Rational>& v) {
    require(m.cols() == v.size(), "BadMatrix", "dimension mismatch in apply");
    std::vector<Rational> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && v[j] != 0) out[i] += m.at(i, j) * v[j];
    return out;
}

} // namespace eqalg
