#pragma once

#include "slk/lattice.hpp"

namespace slk {

// A surface-type lattice with a chosen codimension filtration. Blowup targets
// may have degree zero, where the filtration is a genuine choice.
struct FilteredLattice {
    SerreLattice lattice;
    CodimFiltration filt;
};

FilteredLattice filtered(const SerreLattice& L);  // canonical filtration (surface*)
FilteredLattice filtered(const SerreLattice& L, const CodimFiltration& filt);

// Numerical blowup at z ∈ F²K: K̃ = Zf ⊕ K with ⟨f,f⟩ = 1, ⟨−,f⟩ = 0,
// ⟨f,y⟩ = ⟨z,y⟩, basis ordered (f, e_1, ..., e_n), and the extended
// filtration F¹K̃ = Zf ⊕ F¹K, F²K̃ = F²K.
FilteredLattice blowup(const FilteredLattice& FL, const Element& z);

struct Blowdown {
    FilteredLattice quotient;  // K̄ = ^⊥f with the restricted form
    Element z;                 // (s-1)f in K̄ coordinates; lies in F²K̄
    IntMatrix basis;           // rows (f, basis of K̄) in ambient coordinates
};

// Reverses blowup: K̄ = {y : ⟨y,f⟩ = 0} for an exceptional f ∈ F¹K.
Blowdown blowdown(const FilteredLattice& FL, const Element& f);

// Gram matrix of the blowup of P² at n times the point class, n >= 0.
IntMatrix build_Kn(const Integer& n);

}  // namespace slk
