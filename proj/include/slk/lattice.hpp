#pragma once

#include <string>

#include "slk/matrix.hpp"

namespace slk {

enum class SurfaceType { NotSurface, Surface, SurfaceStar };

std::string to_string(SurfaceType t);

// A free abelian group Z^n with a nondegenerate bilinear form given by an
// integer Gram matrix G (⟨v,w⟩ = vᵀ G w) and the induced Serre operator
// s = G⁻¹ Gᵀ, which satisfies ⟨v,sw⟩ = ⟨w,v⟩.
class SerreLattice {
public:
    explicit SerreLattice(IntMatrix gram);

    int rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    const RatMatrix& serre() const { return serre_; }
    bool serre_integral() const { return serre_integral_; }
    const IntMatrix& serre_int() const;          // throws if s is not integral
    IntMatrix serre_int_inverse() const;         // s⁻¹, integral case only

    Integer pairing(const Element& v, const Element& w) const;

    // Upper triangular with 1's on the diagonal (Gram of an exceptional basis).
    bool is_exceptional() const;

private:
    IntMatrix gram_;
    RatMatrix serre_;
    IntMatrix serre_int_;
    bool serre_integral_ = false;
};

SerreLattice exceptional_lattice(const IntMatrix& gram);  // validates exceptionality

RatMatrix serre_operator(const SerreLattice& L);
bool is_unipotent(const SerreLattice& L);
SurfaceType surface_type(const SerreLattice& L);

// F¹ ⊃ F² as saturated sublattices of Z^n, rows in HNF.
struct CodimFiltration {
    IntMatrix f1;  // rank n-1
    IntMatrix f2;  // rank 1
};

// Canonical filtration F¹ = sat ker(s-1)², F² = sat im(s-1)²; surface* only.
CodimFiltration codim_filtration(const SerreLattice& L);

// Checks the codimension-filtration axioms: (s-1)Fⁱ ⊆ Fⁱ⁺¹, the dimensions,
// saturation, and ⟨F¹,F²⟩ = 0. Throws std::invalid_argument on violation.
void validate_filtration(const SerreLattice& L, const CodimFiltration& filt);

// Num(K) = F¹K/F²K with intersection form (−,−) = −⟨−,−⟩.
struct NumLattice {
    IntMatrix basis;              // (n-2) x n representative rows in ambient coords
    IntMatrix intersection_gram;  // symmetric, nondegenerate over Q
};

// The filtration together with the deterministic structure element and the
// data derived from it. All rank/degree/slope computations happen here.
struct SurfaceFrame {
    CodimFiltration filt;
    Element o;            // class generates K/F¹K
    Element phi;          // primitive functional with ker φ ⊇ F¹, φ(o) = 1
    Element omega_tilde;  // (s-1)o ∈ F¹K
    NumLattice num;
};

Element structure_element(const SerreLattice& L, const CodimFiltration& filt);
Element canonical_element(const SerreLattice& L, const Element& o);  // (s-1)o

SurfaceFrame make_frame(const SerreLattice& L);  // surface*, canonical filtration
SurfaceFrame make_frame(const SerreLattice& L, const CodimFiltration& filt);
SurfaceFrame make_frame(const SerreLattice& L, const CodimFiltration& filt, const Element& o);

// δ(K) = (ω,ω); 0 for surface type that is not surface*; throws on NotSurface.
Integer degree(const SerreLattice& L);
// δ_F for a supplied filtration (blowups may leave the surface* locus).
Integer degree_filtered(const SerreLattice& L, const CodimFiltration& filt);

Integer rank_of(const SurfaceFrame& fr, const Element& v);
Integer degree_of(const SerreLattice& L, const SurfaceFrame& fr, const Element& v);

// Image of v¹/r_v in Num_Q(K), as coordinates in fr.num.basis; r(v) != 0.
QVec slope(const SerreLattice& L, const SurfaceFrame& fr, const Element& v);

// {v,w} = ⟨v,w⟩ - ⟨w,v⟩.
Integer antisym(const SerreLattice& L, const Element& v, const Element& w);

// Coordinates in fr.num.basis of an element of F¹K, modulo F²K.
Element num_coords(const SurfaceFrame& fr, const Element& x);
QVec num_coords_rat(const SurfaceFrame& fr, const QVec& x);

}  // namespace slk
