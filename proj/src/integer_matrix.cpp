#include "rtinv/integer_matrix.hpp"

#include <stdexcept>

namespace rtinv {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged integer matrix");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool IntMatrix::is_diagonal() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<BigInt> SmithForm::diagonal() const {
    std::vector<BigInt> d;
    const int n = std::min(D.rows(), D.cols());
    for (int i = 0; i < n; ++i) d.push_back(D(i, i));
    return d;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row(IntMatrix& m, int dst, int src, const BigInt& q) {
    for (int j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col(IntMatrix& m, int dst, int src, const BigInt& q) {
    for (int i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    IntMatrix& D = f.D;
    const int rows = m.rows(), cols = m.cols();
    for (int t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
            if (pi < 0) return f;
            swap_rows(D, t, pi);
            swap_rows(f.U, t, pi);
            swap_cols(D, t, pj);
            swap_cols(f.V, t, pj);

            bool reduced = true;
            for (int i = t + 1; i < rows; ++i) {
                if (D(i, t) == 0) continue;
                const BigInt q = floor_div(D(i, t), D(t, t));
                add_row(D, i, t, q);
                add_row(f.U, i, t, q);
                if (D(i, t) != 0) reduced = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (D(t, j) == 0) continue;
                const BigInt q = floor_div(D(t, j), D(t, t));
                add_col(D, j, t, q);
                add_col(f.V, j, t, q);
                if (D(t, j) != 0) reduced = false;
            }
            if (!reduced) continue;

            // Pivot must divide the rest; otherwise fold an offending row in.
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            add_row(D, t, bad, -1);
            add_row(f.U, t, bad, -1);
        }
        if (D(t, t) < 0) {
            for (int j = 0; j < cols; ++j) D(t, j) = -D(t, j);
            for (int j = 0; j < rows; ++j) f.U(t, j) = -f.U(t, j);
        }
    }
    return f;
}

BigInt determinant(const IntMatrix& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    BigInt sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            swap_rows(m, k, r);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

bool verify_smith(const IntMatrix& m, const SmithForm& f) {
    if (!(f.U * m * f.V == f.D) || !f.D.is_diagonal()) return false;
    if (abs(determinant(f.U)) != 1 || abs(determinant(f.V)) != 1) return false;
    const auto d = f.diagonal();
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) return false;
        if (i + 1 < d.size()) {
            if (d[i] == 0 && d[i + 1] != 0) return false;
            if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
        }
    }
    return true;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const SmithForm f = smith_normal_form(m);
    const auto d = f.diagonal();
    int rank = 0;
    while (rank < static_cast<int>(d.size()) && d[rank] != 0) ++rank;
    IntMatrix k(m.cols(), m.cols() - rank);
    for (int c = rank; c < m.cols(); ++c)
        for (int i = 0; i < m.cols(); ++i) k(i, c - rank) = f.V(i, c);
    return k;
}

Inertia inertia(const IntMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("inertia of a non-symmetric matrix");
    const int n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    std::vector<bool> live(n, true);
    Inertia out;
    int remaining = n;
    while (remaining > 0) {
        int p = -1;
        for (int i = 0; i < n && p < 0; ++i)
            if (live[i] && a[i][i] != 0) p = i;
        if (p < 0) {
            // Zero diagonal: replace x_i by x_i + x_j for an off-diagonal pair.
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (live[i] && live[j] && i != j && a[i][j] != 0) {
                        pi = i, pj = j;
                        break;
                    }
            if (pi < 0) {
                out.zero += remaining;
                break;
            }
            for (int k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (int k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            p = pi;
        }
        const Rational piv = a[p][p];
        (piv > 0 ? out.positive : out.negative)++;
        for (int i = 0; i < n; ++i) {
            if (!live[i] || i == p || a[i][p] == 0) continue;
            const Rational f = a[i][p] / piv;
            for (int j = 0; j < n; ++j)
                if (live[j]) a[i][j] -= f * a[p][j];
        }
        for (int i = 0; i < n; ++i) a[p][i] = a[i][p] = 0;
        live[p] = false;
        --remaining;
    }
    return out;
}

}  // namespace rtinv
