#pragma once

#include "quiverforge/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qf {

// Small prime fields for brute-force cross-checks.
struct F2 {
    unsigned char v = 0;
    F2() = default;
    F2(int x) : v(static_cast<unsigned char>(((x % 2) + 2) % 2)) {}
    static F2 zero() { return F2(0); }
    static F2 one() { return F2(1); }
    bool is_zero() const { return v == 0; }
    F2 operator+(F2 o) const { return F2(v ^ o.v); }
    F2 operator-(F2 o) const { return F2(v ^ o.v); }
    F2 operator*(F2 o) const { return F2(v & o.v); }
    F2 operator-() const { return *this; }
    F2 inverse() const {
        if (!v) throw std::domain_error("inverse of zero");
        return *this;
    }
    bool operator==(F2 o) const { return v == o.v; }
    bool operator!=(F2 o) const { return v != o.v; }
};

struct F3 {
    unsigned char v = 0;
    F3() = default;
    F3(int x) : v(static_cast<unsigned char>(((x % 3) + 3) % 3)) {}
    static F3 zero() { return F3(0); }
    static F3 one() { return F3(1); }
    bool is_zero() const { return v == 0; }
    F3 operator+(F3 o) const { return F3(v + o.v); }
    F3 operator-(F3 o) const { return F3(v + 3 - o.v); }
    F3 operator*(F3 o) const { return F3(v * o.v); }
    F3 operator-() const { return F3(3 - v); }
    F3 inverse() const {
        if (!v) throw std::domain_error("inverse of zero");
        return F3(v); // 1 and 2 are self-inverse mod 3
    }
    bool operator==(F3 o) const { return v == o.v; }
    bool operator!=(F3 o) const { return v != o.v; }
};

// Dense row-major matrix over an exact field K (Scalar, F2, F3).
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, K::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K::one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    K& at(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (std::size_t k = 0; k < d_.size(); ++k)
            if (!(d_[k] == o.d_[k])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] + o.d_[k];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] - o.d_[k];
        return m;
    }
    Matrix operator-() const {
        Matrix m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = -d_[k];
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const K& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    m.at(i, j) = m.at(i, j) + a * o.at(k, j);
            }
        return m;
    }
    Matrix scaled(const K& s) const {
        Matrix m(r_, c_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] * s;
        return m;
    }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c_; ++j) std::swap(at(a, j), at(b, j));
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<K> d_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix<K> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix<K> m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

// In-place reduced row echelon form, serial reference kernel.  Pivots are the
// first nonzero entry scanning down each column, so the result (and RREF is
// unique anyway) and the row order are deterministic.  Returns the rank.
template <class K>
std::size_t rref_serial(Matrix<K>& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t p = rank;
        while (p < m.rows() && m.at(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(rank, p);
        K inv = m.at(rank, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            K f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Same contract as rref_serial; eliminates rows in parallel.  Row updates are
// independent, so the result is bit-identical to the serial kernel.
template <class K>
std::size_t rref_parallel(Matrix<K>& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t p = rank;
        while (p < m.rows() && m.at(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(rank, p);
        K inv = m.at(rank, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv;
        const long long nrows = static_cast<long long>(m.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
        for (long long i = 0; i < nrows; ++i) {
            if (static_cast<std::size_t>(i) == rank) continue;
            if (m.at(i, col).is_zero()) continue;
            K f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <class K>
std::size_t rref(Matrix<K>& m) {
#ifdef _OPENMP
    return rref_parallel(m);
#else
    return rref_serial(m);
#endif
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref(m);
}

// Basis of the right null space, returned as the columns of the result.
template <class K>
Matrix<K> kernel_basis(Matrix<K> m) {
    const std::size_t n = m.cols();
    std::size_t rk = rref(m);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0, col = 0; r < rk; ++r) {
        while (col < n && m.at(r, col).is_zero()) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
    }
    Matrix<K> ker(n, n - rk);
    std::size_t kcol = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        ker.at(f, kcol) = K::one();
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            ker.at(pivot_col[r], kcol) = -m.at(r, f);
        ++kcol;
    }
    return ker;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve shape mismatch");
    Matrix<K> rhs(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
    Matrix<K> aug = hstack(a, rhs);
    std::size_t rk = rref(aug);
    // inconsistent iff some pivot lands in the appended column
    for (std::size_t r = 0, col = 0; r < rk; ++r) {
        while (col < aug.cols() && aug.at(r, col).is_zero()) ++col;
        if (col == a.cols()) return std::nullopt;
    }
    std::vector<K> x(a.cols(), K::zero());
    for (std::size_t r = 0, col = 0; r < rk; ++r) {
        while (aug.at(r, col).is_zero()) ++col;
        x[col] = aug.at(r, a.cols());
    }
    return x;
}

template <class K>
std::optional<Matrix<K>> inverse_matrix(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<K> aug = hstack(m, Matrix<K>::identity(m.rows()));
    rref(aug);
    // [m | I] always has full row rank; m is invertible only when its block
    // reduced to the identity (singular m leaks pivots into the right block)
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            if (aug.at(i, j) != (i == j ? K::one() : K::zero())) return std::nullopt;
    Matrix<K> inv(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) inv.at(i, j) = aug.at(i, m.rows() + j);
    return inv;
}

// dim(span(cols A) ∩ span(cols B)) = rank A + rank B - rank [A B].
template <class K>
std::size_t intersection_dim(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.cols() == 0 || b.cols() == 0) return 0;
    return rank(a) + rank(b) - rank(hstack(a, b));
}

} // namespace qf
