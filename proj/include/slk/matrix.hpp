#pragma once

#include <optional>
#include <vector>

#include "slk/numbers.hpp"

namespace slk {

struct IntMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<Integer> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : nrows(r), ncols(c), data(size_t(r) * size_t(c)) {}

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<Element>& rows);

    Integer& at(int i, int j) { return data[size_t(i) * ncols + j]; }
    const Integer& at(int i, int j) const { return data[size_t(i) * ncols + j]; }

    int rows() const { return nrows; }
    int cols() const { return ncols; }
    bool square() const { return nrows == ncols; }

    Element row(int i) const;
    bool is_zero() const;
    bool is_identity() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

struct RatMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<Rational> data;

    RatMatrix() = default;
    RatMatrix(int r, int c) : nrows(r), ncols(c), data(size_t(r) * size_t(c)) {}

    static RatMatrix identity(int n);

    Rational& at(int i, int j) { return data[size_t(i) * ncols + j]; }
    const Rational& at(int i, int j) const { return data[size_t(i) * ncols + j]; }

    int rows() const { return nrows; }
    int cols() const { return ncols; }
    bool square() const { return nrows == ncols; }
    bool is_zero() const;
    bool is_integral() const;

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
};

// Coefficients lowest degree first; zero polynomial is an empty vector.
struct IntPolynomial {
    std::vector<Integer> coeffs;

    void trim();
    int degree() const { return int(coeffs.size()) - 1; }
    const Integer& coeff(int i) const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

IntMatrix transpose(const IntMatrix& m);
IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix sub(const IntMatrix& a, const IntMatrix& b);
Element mul_vec(const IntMatrix& a, const Element& v);      // a * v (column)
Element vec_mul(const Element& v, const IntMatrix& a);      // vᵀ * a, as a row
Integer dot(const Element& a, const Element& b);

RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integral(const RatMatrix& m);  // throws if any entry is non-integral
RatMatrix mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix sub(const RatMatrix& a, const RatMatrix& b);
QVec mul_vec(const RatMatrix& a, const QVec& v);

// Fraction-free (Bareiss) determinant.
Integer det(const IntMatrix& m);

// Exact inverse over the rationals; throws std::invalid_argument on singular input.
RatMatrix inverse(const IntMatrix& m);
RatMatrix inverse(const RatMatrix& m);

// det(M - t Mᵀ) for unimodular square M; throws otherwise.
IntPolynomial char_pencil(const IntMatrix& m);

int rank_rational(const RatMatrix& m);
inline int rank_rational(const IntMatrix& m) { return rank_rational(to_rational(m)); }

// Basis of the right kernel {x : m x = 0}; empty for full column rank.
std::vector<QVec> kernel_basis(const RatMatrix& m);

// Canonical row Hermite normal form: positive pivots, entries above a pivot
// reduced into [0, pivot), zero rows dropped.
IntMatrix hnf_rows(const IntMatrix& m);

// Rows form a basis of {x in Z^n : m x = 0}, in HNF.
IntMatrix int_kernel(const IntMatrix& m);

// Basis of (Q-span of `vectors`) ∩ Z^n, as a direct summand of Z^n.
// Input vectors must be linearly independent.
std::vector<Element> saturate(const std::vector<QVec>& vectors, int ambient_rank);
std::vector<Element> saturate_rows(const IntMatrix& rows);

// Integral coordinates of v in the row lattice spanned by `basis_rows`
// (full row rank assumed); nullopt if v is not in the lattice.
std::optional<Element> solve_in_rows(const IntMatrix& basis_rows, const Element& v);

// Rational coordinates of v in the row span; nullopt if outside the span.
std::optional<QVec> solve_in_rows_rat(const IntMatrix& basis_rows, const QVec& v);

// Inverse of an upper unitriangular integer matrix (again integral).
IntMatrix unitriangular_inverse(const IntMatrix& m);

// Completes the primitive vector c to a unimodular matrix whose first row is c.
IntMatrix complete_to_unimodular(const Element& c);

QVec to_qvec(const Element& v);

}  // namespace slk
