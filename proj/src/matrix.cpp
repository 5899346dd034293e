#include "slk/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace slk {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Element>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); i++) {
        if (int(rows[i].size()) != m.cols())
            throw std::invalid_argument("from_rows: ragged input");
        for (int j = 0; j < m.cols(); j++) m.at(i, j) = rows[i][j];
    }
    return m;
}

Element IntMatrix::row(int i) const {
    Element r(ncols);
    for (int j = 0; j < ncols; j++) r[j] = at(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data.begin(), data.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (!square()) return false;
    for (int i = 0; i < nrows; i++)
        for (int j = 0; j < ncols; j++)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    return std::all_of(data.begin(), data.end(), [](const Rational& x) { return x == 0; });
}

bool RatMatrix::is_integral() const {
    return std::all_of(data.begin(), data.end(),
                       [](const Rational& x) { return x.get_den() == 1; });
}

void IntPolynomial::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

const Integer& IntPolynomial::coeff(int i) const {
    static const Integer zero = 0;
    if (i < 0 || i >= int(coeffs.size())) return zero;
    return coeffs[i];
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) t.at(j, i) = m.at(i, j);
    return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); i++)
        for (int k = 0; k < a.cols(); k++) {
            const Integer& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); j++) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("sub: dimension mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (size_t i = 0; i < a.data.size(); i++) c.data[i] = a.data[i] - b.data[i];
    return c;
}

Element mul_vec(const IntMatrix& a, const Element& v) {
    if (a.cols() != int(v.size())) throw std::invalid_argument("mul_vec: dimension mismatch");
    Element r(a.rows());
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++) r[i] += a.at(i, j) * v[j];
    return r;
}

Element vec_mul(const Element& v, const IntMatrix& a) {
    if (a.rows() != int(v.size())) throw std::invalid_argument("vec_mul: dimension mismatch");
    Element r(a.cols());
    for (int i = 0; i < a.rows(); i++) {
        if (v[i] == 0) continue;
        for (int j = 0; j < a.cols(); j++) r[j] += v[i] * a.at(i, j);
    }
    return r;
}

Integer dot(const Element& a, const Element& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Integer s = 0;
    for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    return s;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.data.size(); i++) r.data[i] = Rational(m.data[i]);
    return r;
}

IntMatrix to_integral(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.data.size(); i++) {
        if (m.data[i].get_den() != 1)
            throw std::invalid_argument("to_integral: non-integral entry");
        r.data[i] = m.data[i].get_num();
    }
    return r;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: dimension mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); i++)
        for (int k = 0; k < a.cols(); k++) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); j++) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

RatMatrix sub(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("sub: dimension mismatch");
    RatMatrix c(a.rows(), a.cols());
    for (size_t i = 0; i < a.data.size(); i++) c.data[i] = a.data[i] - b.data[i];
    return c;
}

QVec mul_vec(const RatMatrix& a, const QVec& v) {
    if (a.cols() != int(v.size())) throw std::invalid_argument("mul_vec: dimension mismatch");
    QVec r(a.rows());
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++) r[i] += a.at(i, j) * v[j];
    return r;
}

Integer det(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("det: non-square input");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++) {
            for (int j = k + 1; j < n; j++) {
                Integer t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                // Bareiss: division by the previous pivot is exact
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Integer(-a.at(n - 1, n - 1));
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse: non-square input");
    int n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (int col = 0; col < n; col++) {
        int p = -1;
        for (int i = col; i < n; i++)
            if (a.at(i, col) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("inverse: singular input");
        if (p != col)
            for (int j = 0; j < n; j++) {
                std::swap(a.at(col, j), a.at(p, j));
                std::swap(inv.at(col, j), inv.at(p, j));
            }
        Rational piv = a.at(col, col);
        for (int j = 0; j < n; j++) {
            a.at(col, j) /= piv;
            inv.at(col, j) /= piv;
        }
        for (int i = 0; i < n; i++) {
            if (i == col || a.at(i, col) == 0) continue;
            Rational f = a.at(i, col);
            for (int j = 0; j < n; j++) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

RatMatrix inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

IntPolynomial char_pencil(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("char_pencil: non-square input");
    int n = m.rows();
    Integer d = det(m);
    if (d != 1 && d != -1) throw std::invalid_argument("char_pencil: non-unimodular input");
    IntMatrix mt = transpose(m);
    // Evaluate det(M - t Mᵀ) at t = 0..n and interpolate (degree <= n).
    std::vector<Rational> vals(n + 1);
    for (int t = 0; t <= n; t++) {
        IntMatrix p(n, n);
        Integer tt(t);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) p.at(i, j) = m.at(i, j) - tt * mt.at(i, j);
        vals[t] = Rational(det(p));
    }
    // Newton divided differences on nodes 0..n.
    std::vector<Rational> dd = vals;
    for (int level = 1; level <= n; level++)
        for (int j = n; j >= level; j--)
            dd[j] = (dd[j] - dd[j - 1]) / Rational(level);
    // Expand sum_k dd[k] * prod_{j<k} (t - j).
    std::vector<Rational> poly(n + 1), basis(n + 1);
    basis[0] = 1;
    int basis_deg = 0;
    for (int k = 0; k <= n; k++) {
        if (k > 0) {
            for (int j = basis_deg + 1; j >= 1; j--)
                basis[j] = basis[j - 1] - Rational(k - 1) * basis[j];
            basis[0] = -Rational(k - 1) * basis[0];
            basis_deg++;
        }
        for (int j = 0; j <= basis_deg; j++) poly[j] += dd[k] * basis[j];
    }
    IntPolynomial result;
    result.coeffs.resize(n + 1);
    for (int j = 0; j <= n; j++) {
        if (poly[j].get_den() != 1)
            throw std::logic_error("char_pencil: interpolation produced a fraction");
        result.coeffs[j] = poly[j].get_num();
    }
    result.trim();
    return result;
}

namespace {

// Row echelon over Q; returns pivot columns. Destroys `a`.
std::vector<int> echelonize(RatMatrix& a) {
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); col++) {
        int p = -1;
        for (int i = r; i < a.rows(); i++)
            if (a.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < a.cols(); j++) std::swap(a.at(r, j), a.at(p, j));
        Rational piv = a.at(r, col);
        for (int j = col; j < a.cols(); j++) a.at(r, j) /= piv;
        for (int i = 0; i < a.rows(); i++) {
            if (i == r || a.at(i, col) == 0) continue;
            Rational f = a.at(i, col);
            for (int j = col; j < a.cols(); j++) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(col);
        r++;
    }
    return pivots;
}

}  // namespace

int rank_rational(const RatMatrix& m) {
    RatMatrix a = m;
    return int(echelonize(a).size());
}

std::vector<QVec> kernel_basis(const RatMatrix& m) {
    RatMatrix a = m;
    std::vector<int> pivots = echelonize(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (int free = 0; free < m.cols(); free++) {
        if (is_pivot[free]) continue;
        QVec v(m.cols());
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); r++) v[pivots[r]] = -a.at(int(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

IntMatrix hnf_rows(const IntMatrix& m) {
    IntMatrix h = m;
    int rows = h.rows(), cols = h.cols();
    int r = 0;
    for (int col = 0; col < cols && r < rows; col++) {
        // Euclidean reduction below row r until a single nonzero remains.
        for (;;) {
            int p = -1;
            for (int i = r; i < rows; i++) {
                if (h.at(i, col) == 0) continue;
                if (p < 0 || mpz_cmpabs(h.at(i, col).get_mpz_t(), h.at(p, col).get_mpz_t()) < 0) p = i;
            }
            if (p < 0) break;
            if (p != r)
                for (int j = 0; j < cols; j++) std::swap(h.at(r, j), h.at(p, j));
            bool clean = true;
            for (int i = r + 1; i < rows; i++) {
                if (h.at(i, col) == 0) continue;
                Integer q = h.at(i, col) / h.at(r, col);  // truncating
                if (q != 0)
                    for (int j = 0; j < cols; j++) h.at(i, j) -= q * h.at(r, j);
                if (h.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < rows && h.at(r, col) != 0) {
            if (h.at(r, col) < 0)
                for (int j = 0; j < cols; j++) h.at(r, j) = -h.at(r, j);
            for (int i = 0; i < r; i++) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(r, col).get_mpz_t());
                if (q != 0)
                    for (int j = 0; j < cols; j++) h.at(i, j) -= q * h.at(r, j);
            }
            r++;
        }
    }
    IntMatrix out(r, cols);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < cols; j++) out.at(i, j) = h.at(i, j);
    return out;
}

IntMatrix int_kernel(const IntMatrix& m) {
    int rows = m.rows(), n = m.cols();
    // HNF of [mᵀ | I]; rows with zero left block carry a kernel basis.
    IntMatrix w(n, rows + n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < rows; j++) w.at(i, j) = m.at(j, i);
        w.at(i, rows + i) = 1;
    }
    IntMatrix h = hnf_rows(w);
    std::vector<Element> ker;
    for (int i = 0; i < h.rows(); i++) {
        bool zero_left = true;
        for (int j = 0; j < rows; j++)
            if (h.at(i, j) != 0) { zero_left = false; break; }
        if (!zero_left) continue;
        Element v(n);
        for (int j = 0; j < n; j++) v[j] = h.at(i, rows + j);
        ker.push_back(std::move(v));
    }
    IntMatrix k = IntMatrix::from_rows(ker);
    if (k.rows() == 0) return IntMatrix(0, n);
    return hnf_rows(k);
}

std::vector<Element> saturate_rows(const IntMatrix& rows) {
    IntMatrix ker = int_kernel(rows);
    IntMatrix sat = int_kernel(ker);
    std::vector<Element> out;
    for (int i = 0; i < sat.rows(); i++) out.push_back(sat.row(i));
    return out;
}

std::vector<Element> saturate(const std::vector<QVec>& vectors, int ambient_rank) {
    if (vectors.empty()) return {};
    IntMatrix a(int(vectors.size()), ambient_rank);
    for (int i = 0; i < a.rows(); i++) {
        if (int(vectors[i].size()) != ambient_rank)
            throw std::invalid_argument("saturate: vector of wrong length");
        Integer l = 1;
        for (const Rational& q : vectors[i]) l = lcm(l, Integer(q.get_den()));
        for (int j = 0; j < ambient_rank; j++) {
            Rational scaled = vectors[i][j] * Rational(l);
            a.at(i, j) = scaled.get_num();
        }
    }
    if (rank_rational(a) != a.rows())
        throw std::invalid_argument("saturate: dependent input");
    return saturate_rows(a);
}

std::optional<Element> solve_in_rows(const IntMatrix& basis_rows, const Element& v) {
    QVec target = to_qvec(v);
    auto q = solve_in_rows_rat(basis_rows, target);
    if (!q) return std::nullopt;
    Element c(q->size());
    for (size_t i = 0; i < q->size(); i++) {
        if ((*q)[i].get_den() != 1) return std::nullopt;
        c[i] = (*q)[i].get_num();
    }
    return c;
}

std::optional<QVec> solve_in_rows_rat(const IntMatrix& basis_rows, const QVec& v) {
    // Solve xᵀ B = v; with independent rows the solution is unique if it exists.
    int k = basis_rows.rows(), n = basis_rows.cols();
    if (int(v.size()) != n) throw std::invalid_argument("solve_in_rows: dimension mismatch");
    RatMatrix aug(n, k + 1);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < k; j++) aug.at(i, j) = Rational(basis_rows.at(j, i));
        aug.at(i, k) = v[i];
    }
    std::vector<int> pivots = echelonize(aug);
    QVec x(k);
    for (size_t r = 0; r < pivots.size(); r++) {
        if (pivots[r] == k) return std::nullopt;  // inconsistent system
        x[pivots[r]] = aug.at(int(r), k);
    }
    return x;
}

IntMatrix unitriangular_inverse(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("unitriangular_inverse: non-square");
    int n = m.rows();
    for (int i = 0; i < n; i++) {
        if (m.at(i, i) != 1) throw std::invalid_argument("unitriangular_inverse: diagonal != 1");
        for (int j = 0; j < i; j++)
            if (m.at(i, j) != 0)
                throw std::invalid_argument("unitriangular_inverse: not upper triangular");
    }
    IntMatrix nil = sub(m, IntMatrix::identity(n));
    IntMatrix result = IntMatrix::identity(n);
    IntMatrix term = IntMatrix::identity(n);
    for (int k = 1; k < n; k++) {
        term = mul(term, nil);
        if (term.is_zero()) break;
        for (size_t i = 0; i < term.data.size(); i++)
            result.data[i] += (k % 2 ? -term.data[i] : term.data[i]);
    }
    return result;
}

IntMatrix complete_to_unimodular(const Element& c) {
    int n = int(c.size());
    Integer g = 0;
    for (const Integer& x : c) g = gcd(g, x);
    if (g != 1) throw std::invalid_argument("complete_to_unimodular: input not primitive");
    // Reduce the column c to e1 by row operations; apply the inverse column
    // operations to V so that V = U⁻¹ with U c = e1. Then (V)ᵀ has first row c.
    Element col = c;
    IntMatrix v = IntMatrix::identity(n);
    for (;;) {
        int p = -1;
        for (int i = 0; i < n; i++) {
            if (col[i] == 0) continue;
            if (p < 0 || mpz_cmpabs(col[i].get_mpz_t(), col[p].get_mpz_t()) < 0) p = i;
        }
        if (p != 0) {
            std::swap(col[0], col[p]);
            for (int i = 0; i < n; i++) std::swap(v.at(i, 0), v.at(i, p));
        }
        bool done = true;
        for (int i = 1; i < n; i++) {
            if (col[i] == 0) continue;
            Integer q = col[i] / col[0];
            if (q != 0) {
                col[i] -= q * col[0];
                for (int r = 0; r < n; r++) v.at(r, 0) += q * v.at(r, i);
            }
            if (col[i] != 0) done = false;
        }
        if (done) break;
    }
    if (col[0] < 0) {
        col[0] = -col[0];
        for (int i = 0; i < n; i++) v.at(i, 0) = -v.at(i, 0);
    }
    IntMatrix w = transpose(v);
    return w;
}

QVec to_qvec(const Element& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); i++) q[i] = Rational(v[i]);
    return q;
}

}  // namespace slk
