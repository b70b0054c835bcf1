#include "bsc/intmat.hpp"

#include <algorithm>

namespace bsc {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    check(cols_ == o.rows_, "IntMat: dimension mismatch in product");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int t = 0; t < cols_; ++t) {
            const Int& x = at(i, t);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(t, j);
        }
    return r;
}

IntVec IntMat::operator*(const IntVec& v) const {
    check(int(v.size()) == cols_, "IntMat: dimension mismatch in matrix-vector product");
    IntVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

IntMat IntMat::transposed() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMat::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMat::is_antisymmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (at(i, j) != -at(j, i)) return false;
    return true;
}

bool IntMat::is_symplectic(const IntMat& J) const {
    if (rows_ != cols_ || rows_ != J.rows()) return false;
    return transposed() * J * (*this) == J;
}

Int IntMat::trace() const {
    Int t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

Int det(const IntMat& m) {
    check(m.rows() == m.cols(), "det: square matrix required");
    int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int sign = 1, prev = 1;
    for (int c = 0; c < n - 1; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a.at(i, c) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j) {
                Int v = a.at(i, j) * a.at(c, c) - a.at(i, c) * a.at(c, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = v;
            }
            a.at(i, c) = 0;
        }
        prev = a.at(c, c);
    }
    return sign * a.at(n - 1, n - 1);
}

IntMat inverse_unimodular(const IntMat& m) {
    check(m.rows() == m.cols(), "inverse: square matrix required");
    int n = m.rows();
    // rational Gauss-Jordan, then integrality check
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) throw ValueError("inverse_unimodular: singular matrix");
        std::swap(a[c], a[p]);
        Rat pv = a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = a[i][n + j];
            v.canonicalize();
            if (v.get_den() != 1) throw ValueError("inverse_unimodular: matrix is not unimodular");
            r.at(i, j) = v.get_num();
        }
    return r;
}

std::vector<Int> snf_invariants(const IntMat& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
    std::vector<Int> inv;
    int r = 0, c = 0;
    while (r < rows && c < cols) {
        int bi = -1, bj = -1;
        for (int i = r; i < rows; ++i)
            for (int j = c; j < cols; ++j)
                if (a[i][j] != 0 && (bi < 0 || cmp(abs(a[i][j]), abs(a[bi][bj])) < 0)) { bi = i; bj = j; }
        if (bi < 0) break;
        std::swap(a[r], a[bi]);
        for (int i = 0; i < rows; ++i) std::swap(a[i][c], a[i][bj]);
        bool again = true;
        while (again) {
            again = false;
            for (int i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                Int q = a[i][c] / a[r][c];
                for (int j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) {
                    std::swap(a[r], a[i]);
                    again = true;
                }
            }
            for (int j = c + 1; j < cols; ++j) {
                if (a[r][j] == 0) continue;
                Int q = a[r][j] / a[r][c];
                for (int i = r; i < rows; ++i) a[i][j] -= q * a[i][c];
                if (a[r][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(a[i][c], a[i][j]);
                    again = true;
                }
            }
        }
        inv.push_back(abs(a[r][c]));
        ++r;
        ++c;
    }
    // enforce the divisibility chain
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t j = i + 1; j < inv.size(); ++j) {
            if (inv[j] % inv[i] == 0) continue;
            Int g = gcd(inv[i], inv[j]);
            Int l = inv[i] / g * inv[j];
            inv[i] = g;
            inv[j] = l;
        }
    return inv;
}

int matrix_order(const IntMat& m, int limit) {
    IntMat p = m;
    for (int t = 1; t <= limit; ++t) {
        if (p.is_identity()) return t;
        p = p * m;
    }
    return 0;
}

IntVec add(const IntVec& a, const IntVec& b) {
    check(a.size() == b.size(), "IntVec add: size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    check(a.size() == b.size(), "IntVec sub: size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec scale(const IntVec& a, const Int& c) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

bool is_zero(const IntVec& a) {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

IntVec canonical_sign(const IntVec& a) {
    for (const Int& x : a) {
        if (x == 0) continue;
        return x > 0 ? a : scale(a, -1);
    }
    return a;
}

}  // namespace bsc
