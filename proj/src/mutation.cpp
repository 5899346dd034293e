#include "slk/mutation.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace slk {

BraidWord parse_word(const std::string& text) {
    BraidWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2) throw std::invalid_argument("bad braid token: " + tok);
        GenKind kind;
        switch (tok[0]) {
            case 's': kind = GenKind::Sigma; break;
            case 'S': kind = GenKind::SigmaInv; break;
            case 'e': kind = GenKind::Eps; break;
            default: throw std::invalid_argument("bad braid token: " + tok);
        }
        size_t pos = 0;
        int idx;
        try {
            idx = std::stoi(tok.substr(1), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad braid token: " + tok);
        }
        if (pos + 1 != tok.size()) throw std::invalid_argument("bad braid token: " + tok);
        w.push_back({kind, idx});
    }
    return w;
}

std::string format_word(const BraidWord& w) {
    std::string s;
    for (const BraidGen& g : w) {
        if (!s.empty()) s += ' ';
        switch (g.kind) {
            case GenKind::Sigma: s += 's'; break;
            case GenKind::SigmaInv: s += 'S'; break;
            case GenKind::Eps: s += 'e'; break;
        }
        s += std::to_string(g.index);
    }
    return s;
}

BraidWord inverse_word(const BraidWord& w) {
    BraidWord inv;
    inv.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        BraidGen g = *it;
        if (g.kind == GenKind::Sigma) g.kind = GenKind::SigmaInv;
        else if (g.kind == GenKind::SigmaInv) g.kind = GenKind::Sigma;
        inv.push_back(g);
    }
    return inv;
}

namespace {

void check_exceptional(const IntMatrix& gram) {
    for (int i = 0; i < gram.rows(); i++) {
        if (gram.at(i, i) != 1) throw std::invalid_argument("apply_gen: Gram not exceptional");
        for (int j = 0; j < i; j++)
            if (gram.at(i, j) != 0) throw std::invalid_argument("apply_gen: Gram not exceptional");
    }
}

// Paper-table action for 1 <= i <= n-1, 1-based indices.
IntMatrix sigma_table(const IntMatrix& m, int i, bool inverse) {
    int n = m.rows();
    IntMatrix out = IntMatrix::identity(n);
    const Integer& h = m.at(i - 1, i);
    for (int k = 1; k <= n; k++)
        for (int l = k + 1; l <= n; l++) {
            const auto M = [&](int a, int b) -> const Integer& { return m.at(a - 1, b - 1); };
            Integer v;
            if (k != i && k != i + 1 && l != i && l != i + 1) v = M(k, l);
            else if (k == i && l == i + 1) v = -h;
            else if (!inverse) {
                if (l == i) v = M(k, i + 1) - h * M(k, i);
                else if (l == i + 1) v = M(k, i);
                else if (k == i) v = M(i + 1, l) - h * M(i, l);
                else v = M(i, l);  // k == i+1
            } else {
                if (l == i) v = M(k, i + 1);
                else if (l == i + 1) v = M(k, i) - h * M(k, i + 1);
                else if (k == i) v = M(i + 1, l);
                else v = M(i, l) - h * M(i + 1, l);  // k == i+1
            }
            out.at(k - 1, l - 1) = v;
        }
    return out;
}

IntMatrix eps_table(const IntMatrix& m, int i) {
    IntMatrix out = m;
    for (int j = 0; j < m.cols(); j++) {
        out.at(i - 1, j) = -out.at(i - 1, j);
        out.at(j, i - 1) = -out.at(j, i - 1);
    }
    return out;
}

int reduce_sigma_index(int i, int n) {
    int r = (i - 1) % n;
    if (r < 0) r += n;
    return r + 1;  // in [1, n]
}

}  // namespace

IntMatrix rho_matrix(const IntMatrix& gram) {
    IntMatrix m = gram;
    for (int i = m.rows() - 1; i >= 1; i--) m = sigma_table(m, i, false);
    return m;
}

IntMatrix rho_inv_matrix(const IntMatrix& gram) {
    IntMatrix m = gram;
    for (int i = 1; i <= m.rows() - 1; i++) m = sigma_table(m, i, true);
    return m;
}

IntMatrix apply_gen(const IntMatrix& gram, const BraidGen& g) {
    if (!gram.square()) throw std::invalid_argument("apply_gen: non-square Gram");
    check_exceptional(gram);
    int n = gram.rows();
    if (g.kind == GenKind::Eps) {
        if (g.index < 1 || g.index > n) throw std::invalid_argument("apply_gen: eps index out of range");
        return eps_table(gram, g.index);
    }
    if (n < 2) throw std::invalid_argument("apply_gen: sigma needs rank >= 2");
    int i = reduce_sigma_index(g.index, n);
    if (i <= n - 1) return sigma_table(gram, i, g.kind == GenKind::SigmaInv);
    // i == n: σ_n = ρ^{n-1} σ_1 ρ^{1-n}; ρ has order n on Gram matrices.
    IntMatrix m = rho_matrix(gram);
    m = sigma_table(m, 1, g.kind == GenKind::SigmaInv);
    for (int k = 0; k < n - 1; k++) m = rho_matrix(m);
    return m;
}

IntMatrix apply_word(const IntMatrix& gram, const BraidWord& w) {
    IntMatrix m = gram;
    for (const BraidGen& g : w) m = apply_gen(m, g);
    return m;
}

IntMatrix BasedLattice::gram() const {
    IntMatrix g(basis.rows(), basis.rows());
    for (int i = 0; i < basis.rows(); i++)
        for (int j = 0; j < basis.rows(); j++) g.at(i, j) = ambient.pairing(basis.row(i), basis.row(j));
    return g;
}

BasedLattice based_standard(const SerreLattice& L) {
    return {L, IntMatrix::identity(L.rank())};
}

BasedLattice rotate(const BasedLattice& b) {
    int n = b.rank();
    Element first = mul_vec(b.ambient.serre_int(), b.basis.row(n - 1));
    std::vector<Element> rows{first};
    for (int i = 0; i < n - 1; i++) rows.push_back(b.basis.row(i));
    return {b.ambient, IntMatrix::from_rows(rows)};
}

BasedLattice rotate_inv(const BasedLattice& b) {
    int n = b.rank();
    Element last = mul_vec(b.ambient.serre_int_inverse(), b.basis.row(0));
    std::vector<Element> rows;
    for (int i = 1; i < n; i++) rows.push_back(b.basis.row(i));
    rows.push_back(last);
    return {b.ambient, IntMatrix::from_rows(rows)};
}

BasedLattice mutate(const BasedLattice& b, const BraidGen& g) {
    int n = b.rank();
    if (g.kind == GenKind::Eps) {
        if (g.index < 1 || g.index > n) throw std::invalid_argument("mutate: eps index out of range");
        BasedLattice out = b;
        for (int j = 0; j < n; j++) out.basis.at(g.index - 1, j) = -out.basis.at(g.index - 1, j);
        return out;
    }
    if (n < 2) throw std::invalid_argument("mutate: sigma needs rank >= 2");
    int i = reduce_sigma_index(g.index, n);
    if (i == n) {
        // σ_n = ρ^{n-1} σ_1 ρ^{1-n}; ρ^n = s is central on mutations but not
        // the identity on bases, so the full conjugation is applied.
        BasedLattice out = b;
        for (int k = 0; k < n - 1; k++) out = rotate_inv(out);
        out = mutate(out, {g.kind, 1});
        for (int k = 0; k < n - 1; k++) out = rotate(out);
        return out;
    }
    Element v = b.basis.row(i - 1);
    Element w = b.basis.row(i);
    Integer h = b.ambient.pairing(v, w);
    BasedLattice out = b;
    Element nv, nw;
    if (g.kind == GenKind::Sigma) {
        // σ(v,w) = (w - <v,w> v, v)
        nv = elem_sub(w, elem_scale(h, v));
        nw = v;
    } else {
        // σ⁻¹(v,w) = (w, v - <v,w> w)
        nv = w;
        nw = elem_sub(v, elem_scale(h, w));
    }
    for (int j = 0; j < out.basis.cols(); j++) {
        out.basis.at(i - 1, j) = nv[j];
        out.basis.at(i, j) = nw[j];
    }
    return out;
}

BasedLattice mutate_word(const BasedLattice& b, const BraidWord& w) {
    BasedLattice out = b;
    for (const BraidGen& g : w) out = mutate(out, g);
    return out;
}

Element helix_element(const BasedLattice& b, long k) {
    int n = b.rank();
    long shift = 0;  // e_k = (s^shift) e_{k + shift*n}
    long kk = k;
    while (kk < 1) { kk += n; shift++; }
    while (kk > n) { kk -= n; shift--; }
    Element e = b.basis.row(int(kk - 1));
    if (shift > 0) {
        const IntMatrix& s = b.ambient.serre_int();
        for (long t = 0; t < shift; t++) e = mul_vec(s, e);
    } else if (shift < 0) {
        IntMatrix sinv = b.ambient.serre_int_inverse();
        for (long t = 0; t < -shift; t++) e = mul_vec(sinv, e);
    }
    return e;
}

Integer markov_number(const SurfaceFrame& fr, const BasedLattice& b) {
    Integer total = 0;
    for (int i = 0; i < b.rank(); i++) total += abs(rank_of(fr, b.basis.row(i)));
    return total;
}

namespace {

std::string gram_key(const IntMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows(); i++)
        for (int j = i + 1; j < m.cols(); j++) {
            s += m.at(i, j).get_str();
            s += ',';
        }
    return s;
}

bool entries_within(const IntMatrix& m, const Integer& cap) {
    for (const Integer& x : m.data)
        if (mpz_cmpabs(x.get_mpz_t(), cap.get_mpz_t()) > 0) return false;
    return true;
}

struct VisitInfo {
    std::string parent;
    int gen = -1;  // index into the generator list; -1 for the root
};

BraidWord unwind(const std::unordered_map<std::string, VisitInfo>& visited, std::string key,
                 const std::vector<BraidGen>& gens) {
    BraidWord w;
    for (;;) {
        const VisitInfo& info = visited.at(key);
        if (info.gen < 0) break;
        w.push_back(gens[info.gen]);
        key = info.parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace

OrbitResult orbit_bfs(const IntMatrix& from, const IntMatrix& to, const Integer& max_entry,
                      size_t max_nodes) {
    if (from.rows() != to.rows() || from.cols() != to.cols())
        throw std::invalid_argument("orbit_bfs: rank mismatch");
    check_exceptional(from);
    check_exceptional(to);
    int n = from.rows();
    std::vector<BraidGen> gens;
    for (int i = 1; i <= n - 1; i++) gens.push_back(sigma(i));
    for (int i = 1; i <= n - 1; i++) gens.push_back(sigma_inv(i));
    for (int i = 1; i <= n; i++) gens.push_back(eps(i));

    // Two fronts meeting in the middle; the generator set is closed under
    // inverses, so the search graph is undirected.
    std::unordered_map<std::string, VisitInfo> vis_f, vis_b;
    std::deque<std::pair<std::string, IntMatrix>> q_f, q_b;
    std::string key_from = gram_key(from), key_to = gram_key(to);
    if (key_from == key_to) return {OrbitResult::Status::Found, {}, 2};
    vis_f[key_from] = {};
    vis_b[key_to] = {};
    q_f.push_back({key_from, from});
    q_b.push_back({key_to, to});
    size_t visited = 2;

    auto expand = [&](bool forward) -> std::optional<BraidWord> {
        auto& q = forward ? q_f : q_b;
        auto& mine = forward ? vis_f : vis_b;
        auto& other = forward ? vis_b : vis_f;
        size_t level = q.size();
        for (size_t c = 0; c < level; c++) {
            auto [key, gram] = std::move(q.front());
            q.pop_front();
            for (int gi = 0; gi < int(gens.size()); gi++) {
                IntMatrix next = apply_gen(gram, gens[gi]);
                if (!entries_within(next, max_entry)) continue;
                std::string nkey = gram_key(next);
                if (mine.count(nkey)) continue;
                mine[nkey] = {key, gi};
                visited++;
                if (other.count(nkey)) {
                    BraidWord wf = unwind(vis_f, nkey, gens);
                    BraidWord wb = unwind(vis_b, nkey, gens);
                    BraidWord inv = inverse_word(wb);
                    wf.insert(wf.end(), inv.begin(), inv.end());
                    return wf;
                }
                q.push_back({std::move(nkey), std::move(next)});
            }
        }
        return std::nullopt;
    };

    while (!q_f.empty() && !q_b.empty()) {
        if (visited > max_nodes) return {OrbitResult::Status::BudgetExhausted, {}, visited};
        bool forward = q_f.size() <= q_b.size();
        if (auto w = expand(forward)) return {OrbitResult::Status::Found, *w, visited};
    }
    return {OrbitResult::Status::FrontierExhausted, {}, visited};
}

}  // namespace slk
