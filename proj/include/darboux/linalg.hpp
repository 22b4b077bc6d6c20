#ifndef DARBOUX_LINALG_HPP
#define DARBOUX_LINALG_HPP

#include "poly.hpp"

#include <optional>
#include <vector>

namespace darboux {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& row : init) {
            if (row.size() != cols_) throw Error("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using SMatrix = Matrix<Scalar>;
using PMatrix = Matrix<Poly>;
using Vec = std::vector<Scalar>;

inline SMatrix operator*(const SMatrix& a, const SMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix shape mismatch");
    SMatrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline Vec operator*(const SMatrix& a, const Vec& v) {
    if (a.cols() != v.size()) throw Error("matrix shape mismatch");
    Vec r(a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!v[j].is_zero()) r[i] += a(i, j) * v[j];
    return r;
}

inline SMatrix identity(size_t n) {
    SMatrix e(n, n);
    for (size_t i = 0; i < n; ++i) e(i, i) = Scalar(1);
    return e;
}

inline bool is_zero_vec(const Vec& v) {
    for (auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

struct Rref {
    SMatrix matrix;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan over the exact field; pivots are the first nonzero entries.
inline Rref rref(SMatrix m, size_t ncols = SIZE_MAX) {
    ncols = std::min(ncols, m.cols());
    Rref out;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(row, piv);
        Scalar inv = m(row, col).inverse();
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.matrix = std::move(m);
    return out;
}

inline size_t rank(const SMatrix& m) { return rref(m).pivots.size(); }

// Scale so the first nonzero entry is 1.
inline Vec normalize_first(Vec v) {
    for (auto& s : v)
        if (!s.is_zero()) {
            Scalar inv = s.inverse();
            for (auto& t : v) t *= inv;
            break;
        }
    return v;
}

// Scale a rational vector by a positive factor to coprime integers.
inline Vec clear_denominators(Vec v) {
    Integer g = 0, l = 1;
    for (auto& s : v) {
        if (!s.is_rational()) return v;
        const Rational& q = s.rational();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    if (g == 0) return v;
    Rational f(l, g);
    f.canonicalize();
    for (auto& s : v) s *= Scalar(f);
    return v;
}

// Nullspace basis with each free variable set to 1 in turn.
inline std::vector<Vec> nullspace_raw(const SMatrix& a) {
    Rref r = rref(a);
    std::vector<bool> is_piv(a.cols(), false);
    for (size_t c : r.pivots) is_piv[c] = true;
    std::vector<Vec> basis;
    for (size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(a.cols());
        v[f] = Scalar(1);
        for (size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vec> nullspace(const SMatrix& a) {
    auto b = nullspace_raw(a);
    for (auto& v : b) v = normalize_first(std::move(v));
    return b;
}

struct LinearSolution {
    std::optional<Vec> particular;
    std::vector<Vec> nullspace;
    size_t rank = 0;
};

// Exact solve of A x = b: particular solution with free variables 0,
// nullspace with first nonzero entry 1.
inline LinearSolution solve_linear(const SMatrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw Error("right-hand side length mismatch");
    SMatrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref r = rref(aug, a.cols());
    LinearSolution out;
    out.rank = r.pivots.size();
    out.nullspace = nullspace(a);
    for (size_t i = r.pivots.size(); i < a.rows(); ++i)
        if (!r.matrix(i, a.cols()).is_zero()) return out;
    Vec x(a.cols());
    for (size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.matrix(i, a.cols());
    out.particular = std::move(x);
    return out;
}

// Bareiss fraction-free determinant.
inline Scalar determinant(SMatrix m) {
    size_t n = m.rows();
    if (m.cols() != n) throw Error("determinant of non-square matrix");
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return Scalar();
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

// Cofactor expansion along the first row.
inline Poly det_poly(const PMatrix& m) {
    size_t n = m.rows();
    if (m.cols() != n) throw Error("determinant of non-square matrix");
    if (n == 0) throw Error("empty polynomial matrix");
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Poly out;
    for (size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        PMatrix minor(n - 1, n - 1);
        for (size_t i = 1; i < n; ++i)
            for (size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        Poly term = m(0, j) * det_poly(minor);
        out = j % 2 ? out - term : out + term;
    }
    if (!out.ring()) out = Poly(m(0, 0).ring());
    return out;
}

// Characteristic polynomial coefficients c[0..n] of det(lambda E - A),
// c[n] = 1, by Faddeev-LeVerrier.
inline std::vector<Scalar> char_poly(const SMatrix& a) {
    size_t n = a.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    SMatrix mk(n, n);
    for (size_t k = 1; k <= n; ++k) {
        SMatrix prod = a * mk;
        for (size_t i = 0; i < n; ++i) prod(i, i) += c[n - k + 1];
        mk = prod;
        SMatrix am = a * mk;
        Scalar tr;
        for (size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Scalar(static_cast<long>(k));
    }
    return c;
}

}  // namespace darboux

#endif
