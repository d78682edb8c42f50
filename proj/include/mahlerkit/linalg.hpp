#ifndef MAHLERKIT_LINALG_HPP
#define MAHLERKIT_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mahlerkit {

/// Dense matrix over an exact field type F. F needs F(int), +, -, *, /,
/// operator== and is_zero(). Used with Rational and RatFunc entries.
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    const F& at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const F& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    out.at(i, j) += aik * bkj;
                }
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<F> d_;
};

/// In-place reduced row echelon form; returns the pivot columns (rank = count).
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        const F inv = F(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            const F f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (m.at(row, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Kernel basis of M (as column-vector solutions of M v = 0), one vector per
/// free column in ascending column order. Deterministic.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
    const std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<F> v(m.cols(), F(0));
        v[free_col] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
F determinant(Matrix<F> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Matrix: determinant of non-square matrix");
    F det(1);
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t pr = col;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) return F(0);
        if (pr != col) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(col, j));
            det = F(0) - det;
        }
        det = det * m.at(col, col);
        const F inv = F(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < m.rows(); ++i) {
            if (m.at(i, col).is_zero()) continue;
            const F f = m.at(i, col) * inv;
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (m.at(col, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) - f * m.at(col, j);
            }
        }
    }
    return det;
}

} // namespace mahlerkit

#endif // MAHLERKIT_LINALG_HPP
