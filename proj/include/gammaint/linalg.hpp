#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gammaint {

/// Dense matrix of exact rationals, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static QMatrix from_rows(const std::vector<QVec>& rows, size_t cols) {
        QMatrix m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
        return m;
    }

    static QMatrix from_columns(const std::vector<QVec>& cols, size_t rows) {
        QMatrix m(rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < rows && i < cols[j].size(); ++i) m(i, j) = cols[j][i];
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rational& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    QVec row(size_t i) const { return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    QVec col(size_t j) const {
        QVec out(rows_);
        for (size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }
    void set_col(size_t j, const QVec& v) {
        for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    QVec apply(const QVec& v) const {
        QVec out(rows_, Rational(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        QMatrix c(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend QMatrix operator+(QMatrix a, const QMatrix& b) {
        for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) {
        for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    QMatrix& operator+=(const QMatrix& b) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
        return *this;
    }
    QMatrix& operator-=(const QMatrix& b) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
        return *this;
    }
    QMatrix scaled(const Rational& c) const {
        QMatrix out(*this);
        for (auto& x : out.data_) x *= c;
        return out;
    }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form; returns the pivot columns.
inline std::vector<size_t> rref(QMatrix& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t rank(QMatrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<QVec> nullspace(QMatrix m) {
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : piv) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVec x(m.cols(), Rational(0));
        x[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m(r, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some solution of m x = b, or nullopt if inconsistent.
inline std::optional<QVec> solve(const QMatrix& m, const QVec& b) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    QVec x(m.cols(), Rational(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols());
    return x;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
    size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline Rational determinant(QMatrix m) {
    size_t n = m.rows();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Column-style Hermite reduction of an integer matrix A (rows x cols):
/// finds unimodular U with A U = [H | 0], H lower echelon with rank(A) columns.
struct ColumnHermite {
    std::vector<std::vector<Integer>> H; ///< rows x rank
    std::vector<std::vector<Integer>> U; ///< cols x cols
    std::vector<size_t> pivot_rows;      ///< pivot row of each H column
    size_t rank = 0;
};

inline ColumnHermite column_hermite(const std::vector<ZVec>& A, size_t cols) {
    size_t rows = A.size();
    std::vector<std::vector<Integer>> M(rows, std::vector<Integer>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) M[i][j] = A[i][j];
    std::vector<std::vector<Integer>> U(cols, std::vector<Integer>(cols));
    for (size_t j = 0; j < cols; ++j) U[j][j] = 1;

    auto col_op = [&](size_t dst, size_t src, const Integer& f) { // col dst -= f * col src
        for (size_t i = 0; i < rows; ++i) M[i][dst] -= f * M[i][src];
        for (size_t i = 0; i < cols; ++i) U[i][dst] -= f * U[i][src];
    };
    auto col_swap = [&](size_t a, size_t b) {
        for (size_t i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
        for (size_t i = 0; i < cols; ++i) std::swap(U[i][a], U[i][b]);
    };
    auto col_neg = [&](size_t a) {
        for (size_t i = 0; i < rows; ++i) M[i][a] = -M[i][a];
        for (size_t i = 0; i < cols; ++i) U[i][a] = -U[i][a];
    };

    ColumnHermite out;
    size_t c = 0;
    for (size_t r = 0; r < rows && c < cols; ++r) {
        // Euclid across columns c..cols-1 on row r.
        while (true) {
            size_t best = cols;
            for (size_t j = c; j < cols; ++j)
                if (M[r][j] != 0 && (best == cols || abs(M[r][j]) < abs(M[r][best]))) best = j;
            if (best == cols) break;
            if (best != c) col_swap(best, c);
            bool done = true;
            for (size_t j = c + 1; j < cols; ++j) {
                if (M[r][j] == 0) continue;
                Integer f;
                mpz_fdiv_q(f.get_mpz_t(), M[r][j].get_mpz_t(), M[r][c].get_mpz_t());
                col_op(j, c, f);
                if (M[r][j] != 0) done = false;
            }
            if (done) break;
        }
        if (M[r][c] == 0) continue;
        if (M[r][c] < 0) col_neg(c);
        for (size_t j = 0; j < c; ++j) {
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), M[r][j].get_mpz_t(), M[r][c].get_mpz_t());
            col_op(j, c, f);
        }
        out.pivot_rows.push_back(r);
        ++c;
    }
    out.rank = c;
    out.H.assign(rows, std::vector<Integer>(c));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < c; ++j) out.H[i][j] = M[i][j];
    out.U = std::move(U);
    return out;
}

inline long checked_long(const Integer& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::Domain, "integer overflow in lattice computation");
    return z.get_si();
}

/// Z-basis of the integer kernel of A (rows given as ZVec of length cols).
inline std::vector<ZVec> integer_kernel(const std::vector<ZVec>& A, size_t cols) {
    auto h = column_hermite(A, cols);
    std::vector<ZVec> basis;
    for (size_t j = h.rank; j < cols; ++j) {
        ZVec v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = checked_long(h.U[i][j]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Integer solution of A x = b, or nullopt.
inline std::optional<ZVec> integer_solve(const std::vector<ZVec>& A, size_t cols, const ZVec& b) {
    auto h = column_hermite(A, cols);
    std::vector<Integer> y(h.rank);
    for (size_t k = 0; k < h.rank; ++k) {
        size_t r = h.pivot_rows[k];
        Integer rest = b[r];
        for (size_t j = 0; j < k; ++j) rest -= h.H[r][j] * y[j];
        if (!mpz_divisible_p(rest.get_mpz_t(), h.H[r][k].get_mpz_t())) return std::nullopt;
        y[k] = rest / h.H[r][k];
    }
    for (size_t r = 0; r < A.size(); ++r) {
        Integer acc = 0;
        for (size_t j = 0; j < h.rank; ++j) acc += h.H[r][j] * y[j];
        if (acc != b[r]) return std::nullopt;
    }
    ZVec x(cols, 0);
    for (size_t i = 0; i < cols; ++i) {
        Integer acc = 0;
        for (size_t j = 0; j < h.rank; ++j) acc += h.U[i][j] * y[j];
        x[i] = checked_long(acc);
    }
    return x;
}

/// Index of the sublattice spanned by the columns of A in Z^rows (0 if not full rank).
inline Integer lattice_index(const std::vector<ZVec>& A, size_t cols) {
    auto h = column_hermite(A, cols);
    if (h.rank < A.size()) return 0;
    Integer idx = 1;
    for (size_t k = 0; k < h.rank; ++k) idx *= h.H[h.pivot_rows[k]][k];
    return abs(idx);
}

inline long gcd_vec(const ZVec& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

/// Scale a rational vector to a primitive integer vector in the same direction.
inline ZVec primitive_integer(const QVec& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> w(v.size());
    Integer g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * Rational(l);
        w[i] = t.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    ZVec out(v.size(), 0);
    if (g == 0) return out;
    for (size_t i = 0; i < v.size(); ++i) out[i] = checked_long(w[i] / g);
    return out;
}

} // namespace gammaint
