#ifndef RVS_MATRIX_HPP
#define RVS_MATRIX_HPP

#include <cassert>
#include <compare>
#include <optional>
#include <vector>

#include "rvs/rational.hpp"

namespace rvs {

/// Dense matrix over an exact field (Rational, Cyclotomic, ...).
/// Elimination uses first-nonzero pivoting; with exact scalars there is
/// nothing to gain from pivot selection and this keeps results deterministic.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        std::vector<T> r(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] - o.d_[i];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    void append_row(const std::vector<T>& row) {
        assert(rows_ == 0 || static_cast<int>(row.size()) == cols_);
        if (rows_ == 0) cols_ = static_cast<int>(row.size());
        d_.insert(d_.end(), row.begin(), row.end());
        ++rows_;
    }

    std::vector<T> row(int i) const {
        return std::vector<T>(d_.begin() + static_cast<size_t>(i) * cols_,
                              d_.begin() + static_cast<size_t>(i + 1) * cols_);
    }

    const std::vector<T>& data() const { return d_; }

private:
    int rows_, cols_;
    std::vector<T> d_;
};

/// Reduced row echelon form in place; returns the rank.
template <typename T>
int rref_inplace(Matrix<T>& m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!(m(i, col) == T(0))) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        T inv = T(1) / m(rank, col);
        for (int j = col; j < m.cols(); ++j) m(rank, j) = m(rank, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank) continue;
            T f = m(i, col);
            if (f == T(0)) continue;
            for (int j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <typename T>
int rank(Matrix<T> m) { return rref_inplace(m); }

/// Row basis of the null space {v : M v = 0}, in reduced echelon form.
template <typename T>
Matrix<T> kernel(Matrix<T> m) {
    int n = m.cols();
    int r = rref_inplace(m);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (int i = 0, col = 0; i < r; ++i) {
        while (col < n && m(i, col) == T(0)) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
    }
    Matrix<T> ker(0, n);
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(n, T(0));
        v[free] = T(1);
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = T(0) - m(i, free);
        ker.append_row(v);
    }
    Matrix<T> out = ker;
    rref_inplace(out);
    return out;
}

/// A linear subspace given by its reduced-echelon row basis; two subspaces
/// are equal iff their basis matrices are equal.
template <typename T>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(Matrix<T> row_basis) : basis_(std::move(row_basis)) {
        rref_inplace(basis_);
        Matrix<T> trimmed(0, basis_.cols());
        for (int i = 0; i < basis_.rows(); ++i) {
            bool zero = true;
            for (int j = 0; j < basis_.cols(); ++j)
                if (!(basis_(i, j) == T(0))) { zero = false; break; }
            if (!zero) trimmed.append_row(basis_.row(i));
        }
        basis_ = trimmed;
    }

    static Subspace zero(int ambient) { return Subspace(Matrix<T>(0, ambient)); }
    static Subspace full(int ambient) { return Subspace(Matrix<T>::identity(ambient)); }

    int dim() const { return basis_.rows(); }
    int ambient_dim() const { return basis_.cols(); }
    const Matrix<T>& basis() const { return basis_; }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

    bool contains(const std::vector<T>& v) const {
        std::vector<T> w = v;
        for (int i = 0, col = 0; i < basis_.rows(); ++i) {
            while (col < basis_.cols() && basis_(i, col) == T(0)) ++col;
            if (col >= basis_.cols()) break;
            T f = w[col];
            if (f == T(0)) continue;
            for (int j = col; j < basis_.cols(); ++j) w[j] = w[j] - f * basis_(i, j);
        }
        for (const T& x : w)
            if (!(x == T(0))) return false;
        return true;
    }

private:
    Matrix<T> basis_;
};

/// Solve A x = b; nullopt if inconsistent. For underdetermined systems a
/// particular solution with zero free variables is returned.
template <typename T>
std::optional<std::vector<T>> solve(Matrix<T> a, std::vector<T> b) {
    int n = a.cols();
    Matrix<T> aug(a.rows(), n + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    rref_inplace(aug);
    std::vector<T> x(n, T(0));
    for (int i = 0; i < aug.rows(); ++i) {
        int lead = -1;
        for (int j = 0; j <= n; ++j)
            if (!(aug(i, j) == T(0))) { lead = j; break; }
        if (lead < 0) continue;
        if (lead == n) return std::nullopt;
        x[lead] = aug(i, n);
    }
    return x;
}

template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    if (rref_inplace(aug) != n) return std::nullopt;
    // Full rank of the augmented matrix is automatic (identity block); the
    // input is invertible only if all pivots land in the left block.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (aug(i, j) != (i == j ? T(1) : T(0))) return std::nullopt;
    Matrix<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Eigenspace {v : M v = lambda v} as a subspace.
template <typename T>
Subspace<T> eigenspace(const Matrix<T>& m, const T& lambda) {
    assert(m.rows() == m.cols());
    Matrix<T> shifted = m;
    for (int i = 0; i < m.rows(); ++i) shifted(i, i) = shifted(i, i) - lambda;
    return Subspace<T>(kernel(shifted));
}

/// True iff the covector alpha kills every vector of V.
template <typename T>
bool functional_vanishes_on(const std::vector<T>& alpha, const Subspace<T>& v) {
    for (int i = 0; i < v.basis().rows(); ++i) {
        T s(0);
        for (int j = 0; j < v.basis().cols(); ++j) s = s + alpha[j] * v.basis()(i, j);
        if (!(s == T(0))) return false;
    }
    return true;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    assert(a.size() == b.size());
    T s(0);
    for (size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}

} // namespace rvs

#endif
