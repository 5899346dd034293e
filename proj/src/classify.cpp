#include "slk/classify.hpp"

#include <optional>

namespace slk {

std::string to_string(ClassTag t) {
    switch (t) {
        case ClassTag::Trivial: return "Trivial";
        case ClassTag::P2: return "P2";
        case ClassTag::Quadric: return "Quadric";
        case ClassTag::NumBlowup: return "NumBlowup";
    }
    return "?";
}

IntMatrix p2_gram() {
    IntMatrix m = IntMatrix::identity(3);
    m.at(0, 1) = 3;
    m.at(0, 2) = 3;
    m.at(1, 2) = 3;
    return m;
}

IntMatrix quadric_gram() {
    IntMatrix m = IntMatrix::identity(4);
    m.at(0, 1) = 2;
    m.at(0, 2) = 2;
    m.at(0, 3) = 4;
    m.at(1, 3) = 2;
    m.at(2, 3) = 2;
    return m;
}

bool s_parity(const IntMatrix& gram) {
    SerreLattice L(gram);
    IntMatrix n = sub(L.serre_int(), IntMatrix::identity(L.rank()));
    for (const Integer& x : n.data)
        if (x % 2 != 0) return false;
    return true;
}

CanonicalClass make_class(ClassTag tag, const Integer& n) {
    CanonicalClass cls;
    cls.tag = tag;
    cls.n = n;
    switch (tag) {
        case ClassTag::Trivial:
            cls.delta = 0;
            cls.parity = true;
            break;
        case ClassTag::P2:
            cls.delta = 9;
            cls.parity = s_parity(p2_gram());
            break;
        case ClassTag::Quadric:
            cls.delta = 8;
            cls.parity = s_parity(quadric_gram());
            break;
        case ClassTag::NumBlowup:
            cls.delta = 9 - n * n;
            cls.parity = s_parity(build_Kn(n));
            break;
    }
    return cls;
}

IntMatrix canonical_gram(const CanonicalClass& cls, int rank) {
    switch (cls.tag) {
        case ClassTag::Trivial: return IntMatrix::identity(rank);
        case ClassTag::P2: return p2_gram();
        case ClassTag::Quadric: return quadric_gram();
        case ClassTag::NumBlowup: return build_Kn(cls.n);
    }
    throw std::logic_error("canonical_gram: unreachable");
}

namespace {

void require_exceptional(const IntMatrix& gram, int rank) {
    if (gram.rows() != rank || gram.cols() != rank)
        throw std::invalid_argument("classify: wrong rank");
    for (int i = 0; i < rank; i++) {
        if (gram.at(i, i) != 1)
            throw std::invalid_argument("classify: Gram matrix is not exceptional");
        for (int j = 0; j < i; j++)
            if (gram.at(i, j) != 0)
                throw std::invalid_argument("classify: Gram matrix is not exceptional");
    }
}

BraidWord shift_word(const BraidWord& w, int by) {
    BraidWord out = w;
    for (BraidGen& g : out) g.index += by;
    return out;
}

// Tracks the element-level basis and the emitted word together.
struct Worker {
    BasedLattice basis;
    BraidWord word;

    explicit Worker(const SerreLattice& L) : basis(based_standard(L)) {}

    void apply(const BraidGen& g) {
        basis = mutate(basis, g);
        word.push_back(g);
    }
    void apply_all(const BraidWord& w) {
        for (const BraidGen& g : w) apply(g);
    }
    void rotate_thread() {  // ρ = σ1 σ2 σ3 (rightmost first)
        int n = basis.rank();
        for (int i = n - 1; i >= 1; i--) apply(sigma(i));
    }
    IntMatrix gram() const { return basis.gram(); }
};

Verdict finish(const IntMatrix& input, const CanonicalClass& cls, BraidWord word,
               std::string note = {}) {
    Verdict v{cls, std::move(word), canonical_gram(cls, input.rows()), std::move(note)};
    if (apply_word(input, v.witness) != v.canonical)
        throw InternalInconsistency("classification witness failed to verify");
    return v;
}

// BFS over the candidate canonical representatives matching the invariants.
std::optional<Verdict> bfs_fallback(const IntMatrix& input, const Integer& delta, bool parity) {
    std::vector<CanonicalClass> candidates;
    if (input.rows() == 3) {
        candidates.push_back(make_class(ClassTag::P2));
    } else {
        if (delta == 8) candidates.push_back(make_class(ClassTag::Quadric));
        Integer nsq = 9 - delta;
        if (nsq >= 0) {
            Integer n = sqrt(nsq);
            if (n * n == nsq) candidates.push_back(make_class(ClassTag::NumBlowup, n));
        }
    }
    for (const CanonicalClass& cls : candidates) {
        if (cls.parity != parity || cls.delta != delta) continue;
        OrbitResult r = orbit_bfs(input, canonical_gram(cls, input.rows()), Integer(1000000),
                                  200000);
        if (r.status == OrbitResult::Status::Found)
            return Verdict{cls, r.word, canonical_gram(cls, input.rows()), {}};
    }
    return std::nullopt;
}

}  // namespace

Verdict classify_rank3(const IntMatrix& gram) {
    require_exceptional(gram, 3);
    Rank3Coeffs t = coeffs3_of(gram);
    if (markov_value(t) != 0)
        throw std::invalid_argument("classify_rank3: not a solution of the Markov equation");
    if (gram.is_identity())
        return finish(gram, make_class(ClassTag::Trivial), {},
                      "zero solution: fixed by every mutation, never reaches (3,3,3)");
    MarkovReduction red = markov_reduce(t);
    return finish(gram, make_class(ClassTag::P2), red.word);
}

namespace {

// §-route for (s-1)² = 0: Markov-reduce the (d,e,f) block with σ2,σ3,ε moves,
// after which the first row is forced to ±(3,6,3); ε1 lands on K3.
Verdict classify_degree_zero(const IntMatrix& gram, const SerreLattice& L) {
    Worker w(L);
    IntMatrix g = gram;
    Rank3Coeffs block{g.at(1, 2), g.at(1, 3), g.at(2, 3)};
    if (markov_value(block) != 0)
        throw InternalInconsistency("degree-zero case: block triple is not a Markov solution");
    MarkovReduction red = markov_reduce(block);
    if (red.canonical != Rank3Coeffs{3, 3, 3})
        throw InternalInconsistency("degree-zero case: block reduced to the zero solution");
    w.apply_all(shift_word(red.word, 1));
    g = w.gram();
    if (g.at(0, 1) == -3) w.apply(eps(1));
    g = w.gram();
    if (g != build_Kn(3))
        throw InternalInconsistency("degree-zero case: did not land on K3");
    return finish(gram, make_class(ClassTag::NumBlowup, 3), w.word);
}

struct ThreadView {
    // e_{1-k} .. e_{4-k} for rotation count k, plus their ranks.
    std::vector<Element> elems;
    std::vector<Integer> ranks;
};

ThreadView view_thread(const SurfaceFrame& fr, const BasedLattice& b, int k) {
    ThreadView tv;
    for (int pos = 1; pos <= b.rank(); pos++) {
        Element e = helix_element(b, pos - k);
        tv.ranks.push_back(rank_of(fr, e));
        tv.elems.push_back(std::move(e));
    }
    return tv;
}

Verdict classify_surface_star(const IntMatrix& gram, const SerreLattice& L) {
    SurfaceFrame fr = make_frame(L);
    Worker w(L);
    const int n = 4;

    auto normalize_signs = [&]() {
        for (int i = 1; i <= n; i++)
            if (rank_of(fr, w.basis.basis.row(i - 1)) < 0) w.apply(eps(i));
    };

    normalize_signs();
    // M-descent: first strictly decreasing σ±1 over rotated threads, with the
    // fixed tie order (smallest rotation, smallest index, σ before σ⁻¹).
    for (;;) {
        Integer mval = markov_number(fr, w.basis);
        int best_k = -1, best_i = 0;
        bool best_inv = false;
        for (int k = 0; k < n && best_k < 0; k++) {
            ThreadView tv = view_thread(fr, w.basis, k);
            for (int i = 1; i <= n - 1 && best_k < 0; i++) {
                const Integer& rv = tv.ranks[i - 1];
                const Integer& rw = tv.ranks[i];
                Integer h = L.pairing(tv.elems[i - 1], tv.elems[i]);
                Integer after_sigma = mval - abs(rw) + abs(rw - h * rv);
                if (after_sigma < mval) {
                    best_k = k; best_i = i; best_inv = false;
                    break;
                }
                Integer after_inv = mval - abs(rv) + abs(rv - h * rw);
                if (after_inv < mval) {
                    best_k = k; best_i = i; best_inv = true;
                }
            }
        }
        if (best_k < 0) break;
        for (int k = 0; k < best_k; k++) w.rotate_thread();
        w.apply(best_inv ? sigma_inv(best_i) : sigma(best_i));
        normalize_signs();
        if (markov_number(fr, w.basis) >= mval)
            throw InternalInconsistency("descent step failed to decrease M");
    }

    // Case 1: a rank-zero thread element. Rotate it to the front, blow down,
    // reduce the P² block, and read n off the bordered row.
    {
        int zero_pos = 0;
        for (int i = 1; i <= n; i++)
            if (rank_of(fr, w.basis.basis.row(i - 1)) == 0) { zero_pos = i; break; }
        if (zero_pos > 0) {
            int rot = (1 - zero_pos) % n;
            if (rot < 0) rot += n;
            for (int k = 0; k < rot; k++) w.rotate_thread();
            IntMatrix g = w.gram();
            IntMatrix block(3, 3);
            for (int i = 0; i < 3; i++)
                for (int j = 0; j < 3; j++) block.at(i, j) = g.at(i + 1, j + 1);
            Verdict sub = classify_rank3(block);
            if (sub.cls.tag != ClassTag::P2)
                throw InternalInconsistency("case 1: blowdown block is not a P2 lattice");
            w.apply_all(shift_word(sub.witness, 1));
            g = w.gram();
            Integer nn = g.at(0, 1);
            if (g.at(0, 2) != 2 * nn || g.at(0, 3) != nn)
                throw InternalInconsistency("case 1: bordered row is not n·(1,2,1)");
            if (nn < 0) {
                w.apply(eps(1));
                nn = -nn;
            }
            if (w.gram() != build_Kn(nn))
                throw InternalInconsistency("case 1: did not land on the K_n representative");
            return finish(gram, make_class(ClassTag::NumBlowup, nn), w.word);
        }
    }

    // Case 2: ⟨e1,e2⟩ = 2 = ⟨e3,e4⟩ on some rotated thread.
    {
        int found_k = -1;
        for (int k = 0; k < n; k++) {
            ThreadView tv = view_thread(fr, w.basis, k);
            if (L.pairing(tv.elems[0], tv.elems[1]) == 2 &&
                L.pairing(tv.elems[2], tv.elems[3]) == 2) {
                found_k = k;
                break;
            }
        }
        if (found_k < 0)
            throw InternalInconsistency("local minimum matches neither descent case");
        for (int k = 0; k < found_k; k++) w.rotate_thread();
    }
    IntMatrix g = w.gram();
    if (g.at(0, 2) < g.at(1, 2)) {  // b >= d via the sign change of e1, e2
        w.apply(eps(1));
        w.apply(eps(2));
        g = w.gram();
    }
    Integer t = g.at(1, 2);
    Integer fb = g.at(0, 2) - t, fc = g.at(0, 3) - t, fe = g.at(1, 3) - t;

    CanonicalClass cls;
    if (fb == 2 && fc == 4 && fe == 2) {
        // (ε1 σ1) shifts t by +2; two orbits, by the parity of t.
        while (t >= 2) { w.apply(eps(1)); w.apply(sigma_inv(1)); t -= 2; }
        while (t <= -1) { w.apply(sigma(1)); w.apply(eps(1)); t += 2; }
        if (t == 0) {
            cls = make_class(ClassTag::Quadric);
        } else {
            w.apply_all(parse_word("s2 s3 S1 e4 e2"));
            cls = make_class(ClassTag::NumBlowup, 1);
        }
    } else if (fb == 1 && fc == 5 && fe == 4) {
        // (ε1 σ1) shifts t by +1; single orbit.
        while (t >= 1) { w.apply(eps(1)); w.apply(sigma_inv(1)); t -= 1; }
        while (t <= -1) { w.apply(sigma(1)); w.apply(eps(1)); t += 1; }
        w.apply_all(parse_word("s2 s1 S2 s1 e4"));
        cls = make_class(ClassTag::NumBlowup, 2);
    } else if (fb == 4 && fc == 5 && fe == 1) {
        // (ε3 σ3)⁻¹ shifts t by +1; single orbit.
        while (t >= 1) { w.apply(sigma(3)); w.apply(eps(3)); t -= 1; }
        while (t <= -1) { w.apply(eps(3)); w.apply(sigma_inv(3)); t += 1; }
        w.apply_all(parse_word("s2 s3 S2 S2 S1 S2 e3"));
        cls = make_class(ClassTag::NumBlowup, 2);
    } else {
        throw InternalInconsistency("case 2: tuple matches none of the three families");
    }
    if (w.gram() != canonical_gram(cls, 4))
        throw InternalInconsistency("case 2: did not land on the canonical representative");
    return finish(gram, cls, w.word);
}

}  // namespace

Verdict classify_rank4(const IntMatrix& gram) {
    require_exceptional(gram, 4);
    auto [q1, q2] = rank4_values(coeffs4_of(gram));
    if (q1 != 0 || q2 != 0)
        throw std::invalid_argument("classify_rank4: not a solution of the rank-4 system");
    SerreLattice L(gram);
    if (gram.is_identity())
        return finish(gram, make_class(ClassTag::Trivial), {},
                      "zero solution: (s-1)^2 = 0 with delta = 0 forces all entries to 0; "
                      "fixed by every mutation");

    Integer delta = degree(L);
    bool parity = s_parity(gram);
    IntMatrix nil = sub(L.serre_int(), IntMatrix::identity(4));
    bool deg_zero = mul(nil, nil).is_zero();
    try {
        Verdict v = deg_zero ? classify_degree_zero(gram, L) : classify_surface_star(gram, L);
        if (v.cls.delta != delta || v.cls.parity != parity)
            throw InternalInconsistency("verdict invariants disagree with the input");
        return v;
    } catch (const InternalInconsistency&) {
        if (auto v = bfs_fallback(gram, delta, parity)) return *v;
        throw;
    }
}

Verdict classify(const IntMatrix& gram) {
    if (gram.rows() == 3) return classify_rank3(gram);
    if (gram.rows() == 4) return classify_rank4(gram);
    throw std::invalid_argument("classify: only rank 3 and rank 4 are supported");
}

Equivalence is_equivalent(const IntMatrix& m1, const IntMatrix& m2, const Integer& max_entry,
                          size_t max_nodes) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw std::invalid_argument("is_equivalent: rank mismatch");
    SerreLattice L1(m1), L2(m2);
    SurfaceType t1 = surface_type(L1), t2 = surface_type(L2);
    if (t1 != t2) return {Equivalence::Kind::No, {}, "surface_type"};
    if (t1 != SurfaceType::NotSurface && degree(L1) != degree(L2))
        return {Equivalence::Kind::No, {}, "delta"};
    if (L1.serre_integral() && L2.serre_integral() && s_parity(m1) != s_parity(m2))
        return {Equivalence::Kind::No, {}, "s_parity"};

    OrbitResult r = orbit_bfs(m1, m2, max_entry, max_nodes);
    if (r.status == OrbitResult::Status::Found) return {Equivalence::Kind::Yes, r.word, {}};

    // Same invariants but out of search budget: try composing classifications.
    if (m1.rows() == 3 || m1.rows() == 4) {
        try {
            Verdict v1 = classify(m1);
            Verdict v2 = classify(m2);
            if (v1.cls == v2.cls) {
                BraidWord word = v1.witness;
                BraidWord back = inverse_word(v2.witness);
                word.insert(word.end(), back.begin(), back.end());
                if (apply_word(m1, word) == m2) return {Equivalence::Kind::Yes, word, {}};
            } else {
                return {Equivalence::Kind::No, {}, "canonical_class"};
            }
        } catch (const std::invalid_argument&) {
            // not solutions of the respective systems; no classification route
        }
    }
    return {Equivalence::Kind::Unknown, {}, {}};
}

}  // namespace slk
