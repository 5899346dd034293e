#pragma once

#include <string>
#include <vector>

#include "slk/lattice.hpp"

namespace slk {

enum class GenKind { Sigma, SigmaInv, Eps };

// Signed braid group generator. Sigma/SigmaInv indices may be any integer
// (reduced through ρ-conjugation before application); Eps needs 1 <= i <= n.
struct BraidGen {
    GenKind kind;
    int index;
    friend bool operator==(const BraidGen&, const BraidGen&) = default;
};

// Tokens are applied leftmost first (word[0] acts first on the input).
using BraidWord = std::vector<BraidGen>;

inline BraidGen sigma(int i) { return {GenKind::Sigma, i}; }
inline BraidGen sigma_inv(int i) { return {GenKind::SigmaInv, i}; }
inline BraidGen eps(int i) { return {GenKind::Eps, i}; }

// Text format: whitespace-separated `s<i>` / `S<i>` / `e<i>` tokens.
BraidWord parse_word(const std::string& text);
std::string format_word(const BraidWord& w);
BraidWord inverse_word(const BraidWord& w);

// Action on exceptional Gram matrices.
IntMatrix apply_gen(const IntMatrix& gram, const BraidGen& g);
IntMatrix apply_word(const IntMatrix& gram, const BraidWord& w);
IntMatrix rho_matrix(const IntMatrix& gram);      // Gram of the rotated thread
IntMatrix rho_inv_matrix(const IntMatrix& gram);

// An exceptional basis of a fixed ambient lattice, kept in ambient
// coordinates so mutation words yield element-level witnesses.
struct BasedLattice {
    SerreLattice ambient;
    IntMatrix basis;  // rows = basis elements

    IntMatrix gram() const;
    int rank() const { return basis.rows(); }
};

BasedLattice based_standard(const SerreLattice& L);
BasedLattice mutate(const BasedLattice& b, const BraidGen& g);
BasedLattice mutate_word(const BasedLattice& b, const BraidWord& w);

// ρ(E) = (s e_n, e_1, ..., e_{n-1}); needs integral s.
BasedLattice rotate(const BasedLattice& b);
BasedLattice rotate_inv(const BasedLattice& b);

// e_k of the helix extending the thread, for any k (e_{k+n} = s⁻¹ e_k).
Element helix_element(const BasedLattice& b, long k);

// M(E) = Σ |r(e_i)| with respect to the frame's structure element.
Integer markov_number(const SurfaceFrame& fr, const BasedLattice& b);

struct OrbitResult {
    enum class Status { Found, FrontierExhausted, BudgetExhausted };
    Status status;
    BraidWord word;  // valid when Found
    size_t visited = 0;
};

// Bidirectional BFS over {σ_i, σ_i⁻¹, ε_i}, pruning states whose max |entry|
// exceeds max_entry, giving up once max_nodes states have been visited.
// FrontierExhausted means the pruned component of `from` was searched fully.
OrbitResult orbit_bfs(const IntMatrix& from, const IntMatrix& to, const Integer& max_entry,
                      size_t max_nodes);

}  // namespace slk
