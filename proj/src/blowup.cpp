#include "slk/blowup.hpp"

#include <stdexcept>

namespace slk {

FilteredLattice filtered(const SerreLattice& L) { return {L, codim_filtration(L)}; }

FilteredLattice filtered(const SerreLattice& L, const CodimFiltration& filt) {
    validate_filtration(L, filt);
    return {L, filt};
}

FilteredLattice blowup(const FilteredLattice& FL, const Element& z) {
    const SerreLattice& L = FL.lattice;
    int n = L.rank();
    if (int(z.size()) != n) throw std::invalid_argument("blowup: dimension mismatch");
    if (!solve_in_rows(FL.filt.f2, z))
        throw std::invalid_argument("blowup: z is not in F2K");

    Element zt = vec_mul(z, L.gram());  // ⟨z, e_j⟩
    IntMatrix gram(n + 1, n + 1);
    gram.at(0, 0) = 1;
    for (int j = 0; j < n; j++) gram.at(0, j + 1) = zt[j];
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) gram.at(i + 1, j + 1) = L.gram().at(i, j);

    CodimFiltration filt;
    std::vector<Element> f1rows;
    {
        Element f(n + 1);
        f[0] = 1;
        f1rows.push_back(f);
    }
    for (int i = 0; i < FL.filt.f1.rows(); i++) {
        Element r(n + 1);
        for (int j = 0; j < n; j++) r[j + 1] = FL.filt.f1.at(i, j);
        f1rows.push_back(r);
    }
    filt.f1 = hnf_rows(IntMatrix::from_rows(f1rows));
    Element z2(n + 1);
    for (int j = 0; j < n; j++) z2[j + 1] = FL.filt.f2.at(0, j);
    filt.f2 = hnf_rows(IntMatrix::from_rows({z2}));

    return filtered(SerreLattice(gram), filt);
}

Blowdown blowdown(const FilteredLattice& FL, const Element& f) {
    const SerreLattice& L = FL.lattice;
    int n = L.rank();
    if (int(f.size()) != n) throw std::invalid_argument("blowdown: dimension mismatch");
    if (L.pairing(f, f) != 1)
        throw std::invalid_argument("blowdown: f is not exceptional (<f,f> != 1)");
    if (!solve_in_rows(FL.filt.f1, f))
        throw std::invalid_argument("blowdown: f is not in F1K");

    // ^⊥f = {y : ⟨y,f⟩ = 0}, a saturated corank-1 sublattice.
    Element gf = mul_vec(L.gram(), f);
    IntMatrix perp = int_kernel(IntMatrix::from_rows({gf}));
    if (perp.rows() != n - 1) throw std::logic_error("blowdown: perp has wrong rank");

    IntMatrix gram(n - 1, n - 1);
    for (int i = 0; i < n - 1; i++)
        for (int j = 0; j < n - 1; j++) gram.at(i, j) = L.pairing(perp.row(i), perp.row(j));

    // z = (s-1)f computed in the ambient lattice.
    QVec zq = mul_vec(sub(L.serre(), RatMatrix::identity(n)), to_qvec(f));
    Element z_amb(n);
    for (int i = 0; i < n; i++) {
        if (!is_integral(zq[i])) throw std::invalid_argument("blowdown: (s-1)f is not integral");
        z_amb[i] = zq[i].get_num();
    }
    auto z = solve_in_rows(perp, z_amb);
    if (!z) throw std::logic_error("blowdown: (s-1)f does not lie in ^perp f");

    // F¹K̄ = F¹K ∩ K̄, cut out by the two defining functionals.
    IntMatrix u = int_kernel(FL.filt.f1);
    if (u.rows() != 1) throw std::logic_error("blowdown: bad input filtration");
    IntMatrix f1_ambient = int_kernel(IntMatrix::from_rows({u.row(0), gf}));
    std::vector<Element> f1rows;
    for (int i = 0; i < f1_ambient.rows(); i++) {
        auto c = solve_in_rows(perp, f1_ambient.row(i));
        if (!c) throw std::logic_error("blowdown: F1 intersection escaped ^perp f");
        f1rows.push_back(*c);
    }
    auto z2 = solve_in_rows(perp, FL.filt.f2.row(0));
    if (!z2) throw std::logic_error("blowdown: F2K escaped ^perp f");

    CodimFiltration filt;
    filt.f1 = hnf_rows(IntMatrix::from_rows(f1rows));
    filt.f2 = hnf_rows(IntMatrix::from_rows({*z2}));

    Blowdown result{filtered(SerreLattice(gram), filt), *z, IntMatrix(n, n)};
    for (int j = 0; j < n; j++) result.basis.at(0, j) = f[j];
    for (int i = 0; i < n - 1; i++)
        for (int j = 0; j < n; j++) result.basis.at(i + 1, j) = perp.at(i, j);
    return result;
}

IntMatrix build_Kn(const Integer& n) {
    if (n < 0) throw std::invalid_argument("build_Kn: n must be nonnegative");
    IntMatrix m = IntMatrix::identity(4);
    m.at(0, 1) = n;
    m.at(0, 2) = 2 * n;
    m.at(0, 3) = n;
    m.at(1, 2) = 3;
    m.at(1, 3) = 3;
    m.at(2, 3) = 3;
    return m;
}

}  // namespace slk
