#include "slk/lattice.hpp"

#include <stdexcept>

namespace slk {

namespace {

// HNF basis of (Q-span of rows) ∩ Z^n; accepts dependent spanning sets.
IntMatrix saturate_span(const std::vector<QVec>& rows, int n) {
    if (rows.empty()) return IntMatrix(0, n);
    IntMatrix a(int(rows.size()), n);
    for (int i = 0; i < a.rows(); i++) {
        Integer l = 1;
        for (const Rational& q : rows[i]) l = lcm(l, Integer(q.get_den()));
        for (int j = 0; j < n; j++) a.at(i, j) = Rational(rows[i][j] * Rational(l)).get_num();
    }
    return IntMatrix::from_rows(saturate_rows(a));
}

RatMatrix serre_minus_one(const SerreLattice& L) {
    return sub(L.serre(), RatMatrix::identity(L.rank()));
}

// Canonical representative of x modulo the HNF row lattice `h`.
Element reduce_mod_rows(const IntMatrix& h, Element x) {
    for (int i = 0; i < h.rows(); i++) {
        int p = 0;
        while (p < h.cols() && h.at(i, p) == 0) p++;
        if (p == h.cols()) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), x[p].get_mpz_t(), h.at(i, p).get_mpz_t());
        if (q != 0)
            for (int j = 0; j < h.cols(); j++) x[j] -= q * h.at(i, j);
    }
    return x;
}

}  // namespace

std::string to_string(SurfaceType t) {
    switch (t) {
        case SurfaceType::NotSurface: return "not_surface";
        case SurfaceType::Surface: return "surface";
        case SurfaceType::SurfaceStar: return "surface*";
    }
    return "?";
}

SerreLattice::SerreLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.square()) throw std::invalid_argument("SerreLattice: non-square Gram matrix");
    if (is_exceptional()) {
        serre_int_ = mul(unitriangular_inverse(gram_), transpose(gram_));
        serre_ = to_rational(serre_int_);
        serre_integral_ = true;
        return;
    }
    if (det(gram_) == 0) throw std::invalid_argument("SerreLattice: degenerate form");
    serre_ = mul(inverse(gram_), to_rational(transpose(gram_)));
    if (serre_.is_integral()) {
        serre_int_ = to_integral(serre_);
        serre_integral_ = true;
    }
}

const IntMatrix& SerreLattice::serre_int() const {
    if (!serre_integral_) throw std::invalid_argument("Serre operator is not integral");
    return serre_int_;
}

IntMatrix SerreLattice::serre_int_inverse() const {
    if (!serre_integral_) throw std::invalid_argument("Serre operator is not integral");
    return to_integral(inverse(serre_));
}

Integer SerreLattice::pairing(const Element& v, const Element& w) const {
    if (int(v.size()) != rank() || int(w.size()) != rank())
        throw std::invalid_argument("pairing: dimension mismatch");
    return dot(v, mul_vec(gram_, w));
}

bool SerreLattice::is_exceptional() const {
    for (int i = 0; i < gram_.rows(); i++) {
        if (gram_.at(i, i) != 1) return false;
        for (int j = 0; j < i; j++)
            if (gram_.at(i, j) != 0) return false;
    }
    return true;
}

SerreLattice exceptional_lattice(const IntMatrix& gram) {
    SerreLattice L(gram);
    if (!L.is_exceptional())
        throw std::invalid_argument("expected an upper unitriangular Gram matrix");
    return L;
}

RatMatrix serre_operator(const SerreLattice& L) { return L.serre(); }

bool is_unipotent(const SerreLattice& L) {
    int n = L.rank();
    if (L.serre_integral()) {
        IntMatrix nil = sub(L.serre_int(), IntMatrix::identity(n));
        IntMatrix p = nil;
        for (int k = 1; k < n && !p.is_zero(); k++) p = mul(p, nil);
        return p.is_zero();
    }
    RatMatrix nil = serre_minus_one(L);
    RatMatrix p = nil;
    for (int k = 1; k < n && !p.is_zero(); k++) p = mul(p, nil);
    return p.is_zero();
}

SurfaceType surface_type(const SerreLattice& L) {
    if (!is_unipotent(L)) return SurfaceType::NotSurface;
    RatMatrix nil = serre_minus_one(L);
    if (rank_rational(nil) > 2) return SurfaceType::NotSurface;
    return mul(nil, nil).is_zero() ? SurfaceType::Surface : SurfaceType::SurfaceStar;
}

CodimFiltration codim_filtration(const SerreLattice& L) {
    if (surface_type(L) != SurfaceType::SurfaceStar)
        throw std::invalid_argument("codim_filtration: lattice is not of surface* type");
    int n = L.rank();
    RatMatrix nil = serre_minus_one(L);
    RatMatrix nil2 = mul(nil, nil);
    CodimFiltration filt;
    filt.f1 = saturate_span(kernel_basis(nil2), n);
    std::vector<QVec> image_rows;
    for (int j = 0; j < n; j++) {
        QVec col(n);
        for (int i = 0; i < n; i++) col[i] = nil2.at(i, j);
        image_rows.push_back(std::move(col));
    }
    filt.f2 = saturate_span(image_rows, n);
    if (filt.f1.rows() != n - 1 || filt.f2.rows() != 1)
        throw std::logic_error("codim_filtration: unexpected filtration ranks");
    return filt;
}

void validate_filtration(const SerreLattice& L, const CodimFiltration& filt) {
    int n = L.rank();
    if (filt.f1.rows() != n - 1 || filt.f1.cols() != n)
        throw std::invalid_argument("filtration: F1 must have rank n-1");
    if (filt.f2.rows() != 1 || filt.f2.cols() != n)
        throw std::invalid_argument("filtration: F2 must have rank 1");
    if (IntMatrix::from_rows(saturate_rows(filt.f1)) != hnf_rows(filt.f1))
        throw std::invalid_argument("filtration: F1 is not saturated");
    if (IntMatrix::from_rows(saturate_rows(filt.f2)) != hnf_rows(filt.f2))
        throw std::invalid_argument("filtration: F2 is not saturated");
    RatMatrix nil = serre_minus_one(L);
    auto in_span = [&](const IntMatrix& rows, const QVec& v) {
        return solve_in_rows_rat(rows, v).has_value();
    };
    for (int j = 0; j < n; j++) {
        QVec ej(n);
        ej[j] = 1;
        if (!in_span(filt.f1, mul_vec(nil, ej)))
            throw std::invalid_argument("filtration: (s-1)V not contained in F1");
    }
    for (int i = 0; i < filt.f1.rows(); i++) {
        QVec v = to_qvec(filt.f1.row(i));
        if (!in_span(filt.f2, mul_vec(nil, v)))
            throw std::invalid_argument("filtration: (s-1)F1 not contained in F2");
    }
    QVec z = to_qvec(filt.f2.row(0));
    for (const Rational& q : mul_vec(nil, z))
        if (q != 0) throw std::invalid_argument("filtration: (s-1)F2 != 0");
    for (int i = 0; i < filt.f1.rows(); i++)
        if (L.pairing(filt.f1.row(i), filt.f2.row(0)) != 0)
            throw std::invalid_argument("filtration: <F1,F2> != 0");
}

Element structure_element(const SerreLattice& L, const CodimFiltration& filt) {
    IntMatrix u = int_kernel(filt.f1);
    if (u.rows() != 1) throw std::invalid_argument("structure_element: bad filtration");
    IntMatrix w = complete_to_unimodular(u.row(0));
    IntMatrix winv = to_integral(inverse(w));
    Element x(L.rank());
    for (int i = 0; i < L.rank(); i++) x[i] = winv.at(i, 0);
    return reduce_mod_rows(filt.f1, x);
}

Element canonical_element(const SerreLattice& L, const Element& o) {
    QVec img = mul_vec(serre_minus_one(L), to_qvec(o));
    Element w(img.size());
    for (size_t i = 0; i < img.size(); i++) {
        if (!is_integral(img[i]))
            throw std::invalid_argument("canonical_element: (s-1)o is not integral");
        w[i] = img[i].get_num();
    }
    return w;
}

namespace {

NumLattice make_num(const SerreLattice& L, const CodimFiltration& filt) {
    int n = L.rank();
    auto c = solve_in_rows(filt.f1, filt.f2.row(0));
    if (!c) throw std::invalid_argument("num lattice: F2 not contained in F1");
    NumLattice num;
    if (n <= 2) {
        num.basis = IntMatrix(0, n);
        num.intersection_gram = IntMatrix(0, 0);
        return num;
    }
    IntMatrix w = complete_to_unimodular(*c);
    num.basis = IntMatrix(n - 2, n);
    for (int i = 1; i < n - 1; i++) {
        Element rep = vec_mul(w.row(i), filt.f1);
        for (int j = 0; j < n; j++) num.basis.at(i - 1, j) = rep[j];
    }
    num.intersection_gram = IntMatrix(n - 2, n - 2);
    for (int i = 0; i < n - 2; i++)
        for (int j = 0; j < n - 2; j++)
            num.intersection_gram.at(i, j) = -L.pairing(num.basis.row(i), num.basis.row(j));
    return num;
}

}  // namespace

SurfaceFrame make_frame(const SerreLattice& L, const CodimFiltration& filt, const Element& o) {
    SurfaceFrame fr;
    fr.filt = filt;
    IntMatrix u = int_kernel(filt.f1);
    if (u.rows() != 1) throw std::invalid_argument("make_frame: bad filtration");
    Integer val = dot(u.row(0), o);
    if (val != 1 && val != -1)
        throw std::invalid_argument("make_frame: o does not generate K/F1K");
    fr.phi = (val == 1) ? u.row(0) : elem_neg(u.row(0));
    fr.o = o;
    fr.omega_tilde = canonical_element(L, o);
    if (!solve_in_rows(filt.f1, fr.omega_tilde))
        throw std::invalid_argument("make_frame: (s-1)o is not in F1K");
    fr.num = make_num(L, filt);
    return fr;
}

SurfaceFrame make_frame(const SerreLattice& L, const CodimFiltration& filt) {
    return make_frame(L, filt, structure_element(L, filt));
}

SurfaceFrame make_frame(const SerreLattice& L) { return make_frame(L, codim_filtration(L)); }

Integer degree_filtered(const SerreLattice& L, const CodimFiltration& filt) {
    SurfaceFrame fr = make_frame(L, filt);
    return -L.pairing(fr.omega_tilde, fr.omega_tilde);
}

Integer degree(const SerreLattice& L) {
    switch (surface_type(L)) {
        case SurfaceType::NotSurface:
            throw std::invalid_argument("degree: lattice is not of surface type");
        case SurfaceType::Surface:
            return 0;
        case SurfaceType::SurfaceStar:
            return degree_filtered(L, codim_filtration(L));
    }
    throw std::logic_error("degree: unreachable");
}

Integer rank_of(const SurfaceFrame& fr, const Element& v) { return dot(fr.phi, v); }

Integer degree_of(const SerreLattice& L, const SurfaceFrame& fr, const Element& v) {
    return -L.pairing(v, fr.omega_tilde);
}

QVec slope(const SerreLattice& L, const SurfaceFrame& fr, const Element& v) {
    (void)L;
    Integer r = rank_of(fr, v);
    if (r == 0) throw std::invalid_argument("slope: rank zero element");
    Element v1 = elem_sub(v, elem_scale(r, fr.o));
    QVec coords = num_coords_rat(fr, to_qvec(v1));
    for (Rational& q : coords) q /= Rational(r);
    return coords;
}

Integer antisym(const SerreLattice& L, const Element& v, const Element& w) {
    return L.pairing(v, w) - L.pairing(w, v);
}

Element num_coords(const SurfaceFrame& fr, const Element& x) {
    int n = fr.filt.f1.cols();
    std::vector<Element> rows;
    for (int i = 0; i < fr.num.basis.rows(); i++) rows.push_back(fr.num.basis.row(i));
    rows.push_back(fr.filt.f2.row(0));
    auto c = solve_in_rows(IntMatrix::from_rows(rows), x);
    if (!c) throw std::invalid_argument("num_coords: element not in F1K");
    c->resize(size_t(n - 2));
    return *c;
}

QVec num_coords_rat(const SurfaceFrame& fr, const QVec& x) {
    int n = fr.filt.f1.cols();
    std::vector<Element> rows;
    for (int i = 0; i < fr.num.basis.rows(); i++) rows.push_back(fr.num.basis.row(i));
    rows.push_back(fr.filt.f2.row(0));
    auto c = solve_in_rows_rat(IntMatrix::from_rows(rows), x);
    if (!c) throw std::invalid_argument("num_coords_rat: element not in F1 over Q");
    c->resize(size_t(n - 2));
    return *c;
}

}  // namespace slk
