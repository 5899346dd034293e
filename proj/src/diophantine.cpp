#include "slk/diophantine.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slk {

IntMatrix gram_of(const Rank3Coeffs& t) {
    IntMatrix m = IntMatrix::identity(3);
    m.at(0, 1) = t.a;
    m.at(0, 2) = t.b;
    m.at(1, 2) = t.c;
    return m;
}

IntMatrix gram_of(const Rank4Coeffs& t) {
    IntMatrix m = IntMatrix::identity(4);
    m.at(0, 1) = t.a;
    m.at(0, 2) = t.b;
    m.at(0, 3) = t.c;
    m.at(1, 2) = t.d;
    m.at(1, 3) = t.e;
    m.at(2, 3) = t.f;
    return m;
}

Rank3Coeffs coeffs3_of(const IntMatrix& gram) {
    if (gram.rows() != 3 || gram.cols() != 3)
        throw std::invalid_argument("coeffs3_of: expected a 3x3 matrix");
    return {gram.at(0, 1), gram.at(0, 2), gram.at(1, 2)};
}

Rank4Coeffs coeffs4_of(const IntMatrix& gram) {
    if (gram.rows() != 4 || gram.cols() != 4)
        throw std::invalid_argument("coeffs4_of: expected a 4x4 matrix");
    return {gram.at(0, 1), gram.at(0, 2), gram.at(0, 3),
            gram.at(1, 2), gram.at(1, 3), gram.at(2, 3)};
}

Integer markov_value(const Rank3Coeffs& t) {
    return t.a * t.a + t.b * t.b + t.c * t.c - t.a * t.b * t.c;
}

std::pair<Integer, Integer> rank4_values(const Rank4Coeffs& t) {
    Integer q1 = t.a * t.c * t.d * t.f - t.a * t.b * t.d - t.a * t.c * t.e - t.b * t.c * t.f -
                 t.d * t.e * t.f + t.a * t.a + t.b * t.b + t.c * t.c + t.d * t.d + t.e * t.e +
                 t.f * t.f;
    Integer q2 = t.a * t.f - t.b * t.e + t.c * t.d;
    return {q1, q2};
}

namespace {

// Reusable buffers for the (s-1)^4 = 0 test; the sweep calls this millions
// of times, so no per-call matrix allocations.
struct UnipotencyKernel {
    Integer mi[4][4];  // M⁻¹
    Integer s[4][4];   // later s - 1
    Integer p2[4][4];
    Integer p4[4][4];
    Integer acc;

    bool unipotent(const Rank4Coeffs& t) {
        const Integer &a = t.a, &b = t.b, &c = t.c, &d = t.d, &e = t.e, &f = t.f;
        // Inverse of the unitriangular Gram, closed form.
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) mi[i][j] = (i == j) ? 1 : 0;
        mi[0][1] = -a;
        mi[0][2] = a * d - b;
        mi[0][3] = a * e + b * f - c - a * d * f;
        mi[1][2] = -d;
        mi[1][3] = d * f - e;
        mi[2][3] = -f;
        // Gram rows (upper entries only; lower part is zero, diagonal 1).
        static const Integer one(1), zero(0);
        const Integer* g[4][4] = {{&one, &a, &b, &c},
                                  {&zero, &one, &d, &e},
                                  {&zero, &zero, &one, &f},
                                  {&zero, &zero, &zero, &one}};
        // s - 1 with s = M⁻¹ Mᵀ.
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                acc = 0;
                for (int k = 0; k < 4; k++) acc += mi[i][k] * (*g[j][k]);
                if (i == j) acc -= 1;
                s[i][j] = acc;
            }
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                acc = 0;
                for (int k = 0; k < 4; k++) acc += s[i][k] * s[k][j];
                p2[i][j] = acc;
            }
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                acc = 0;
                for (int k = 0; k < 4; k++) acc += p2[i][k] * p2[k][j];
                p4[i][j] = acc;
            }
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++)
                if (p4[i][j] != 0) return false;
        return true;
    }

    // rank(s - 1) over Q; call right after unipotent().
    int rank_s_minus_1() {
        IntMatrix n(4, 4);
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) n.at(i, j) = s[i][j];
        return rank_rational(n);
    }
};

}  // namespace

bool unipotent_iff_solution(const Rank4Coeffs& t) {
    UnipotencyKernel k;
    auto [q1, q2] = rank4_values(t);
    return k.unipotent(t) == (q1 == 0 && q2 == 0);
}

bool unipotency_equivalence_check(const Rank4Coeffs& t) {
    UnipotencyKernel k;
    auto [q1, q2] = rank4_values(t);
    if (k.unipotent(t) != (q1 == 0 && q2 == 0)) return false;
    IntPolynomial chi = char_pencil(gram_of(t));
    return chi.coeff(1) == q1 - 4 && chi.coeff(2) == q2 * q2 - 2 * q1 + 6;
}

namespace {

using i64 = std::int64_t;

i64 isqrt_i64(i64 x) {
    if (x < 0) return -1;
    i64 r = i64(std::sqrt(double(x)));
    while (r > 0 && r * r > x) r--;
    while ((r + 1) * (r + 1) <= x) r++;
    return r;
}

i64 q1_value(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f) {
    return a * c * d * f - a * b * d - a * c * e - b * c * f - d * e * f + a * a + b * b + c * c +
           d * d + e * e + f * f;
}

// Solutions for a fixed (a,b,c) prefix, in lexicographic (d,e,f) order.
void solve_prefix(i64 bound, i64 a, i64 b, i64 c, std::vector<Rank4Coeffs>& out) {
    for (i64 d = -bound; d <= bound; d++)
        for (i64 e = -bound; e <= bound; e++) {
            if (a != 0) {
                // q2 = 0 pins f = (be - cd)/a.
                i64 num = b * e - c * d;
                if (num % a != 0) continue;
                i64 f = num / a;
                if (f < -bound || f > bound) continue;
                if (q1_value(a, b, c, d, e, f) == 0)
                    out.push_back({a, b, c, d, e, f});
            } else {
                // q2 = cd - be must vanish; q1 is then monic quadratic in f.
                if (c * d != b * e) continue;
                i64 sum = b * c + d * e;
                i64 disc = sum * sum - 4 * (b * b + c * c + d * d + e * e);
                if (disc < 0) continue;
                i64 r = isqrt_i64(disc);
                if (r * r != disc) continue;
                for (i64 num : {sum - r, sum + r}) {
                    if (num % 2 != 0) continue;
                    i64 f = num / 2;
                    if (f < -bound || f > bound) continue;
                    out.push_back({0, b, c, d, e, f});
                    if (r == 0) break;
                }
            }
        }
}

void check_enumeration_bound(i64 bound) {
    if (bound < 0) throw std::invalid_argument("enumerate_rank4: negative bound");
    if (bound >= (i64(1) << 15))
        throw std::invalid_argument("enumerate_rank4: bound too large for exact int64 evaluation");
}

}  // namespace

std::vector<Rank4Coeffs> enumerate_rank4_serial(std::int64_t bound) {
    check_enumeration_bound(bound);
    std::vector<Rank4Coeffs> out;
    for (i64 a = -bound; a <= bound; a++)
        for (i64 b = -bound; b <= bound; b++)
            for (i64 c = -bound; c <= bound; c++) solve_prefix(bound, a, b, c, out);
    return out;
}

std::vector<Rank4Coeffs> enumerate_rank4(std::int64_t bound) {
    check_enumeration_bound(bound);
    const i64 w = 2 * bound + 1;
    const i64 chunks = w * w * w;
    std::vector<std::vector<Rank4Coeffs>> per_chunk;
    per_chunk.resize(size_t(chunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (i64 idx = 0; idx < chunks; idx++) {
        i64 a = idx / (w * w) - bound;
        i64 b = (idx / w) % w - bound;
        i64 c = idx % w - bound;
        solve_prefix(bound, a, b, c, per_chunk[size_t(idx)]);
    }
    std::vector<Rank4Coeffs> out;
    for (auto& chunk : per_chunk)
        for (auto& t : chunk) out.push_back(std::move(t));
    return out;
}

namespace {

std::uint64_t sweep_prefix(i64 bound, i64 a, i64 b, i64 c, UnipotencyKernel& kernel) {
    std::uint64_t bad = 0;
    Rank4Coeffs t;
    t.a = a;
    t.b = b;
    t.c = c;
    for (i64 d = -bound; d <= bound; d++) {
        t.d = d;
        for (i64 e = -bound; e <= bound; e++) {
            t.e = e;
            for (i64 f = -bound; f <= bound; f++) {
                t.f = f;
                bool uni = kernel.unipotent(t);
                bool sol = q1_value(a, b, c, d, e, f) == 0 &&
                           a * f - b * e + c * d == 0;
                if (uni != sol) bad++;
                else if (uni && kernel.rank_s_minus_1() > 2) bad++;
            }
        }
    }
    return bad;
}

}  // namespace

std::uint64_t sweep_unipotency_equivalence_serial(std::int64_t bound) {
    check_enumeration_bound(bound);
    UnipotencyKernel kernel;
    std::uint64_t bad = 0;
    for (i64 a = -bound; a <= bound; a++)
        for (i64 b = -bound; b <= bound; b++)
            for (i64 c = -bound; c <= bound; c++) bad += sweep_prefix(bound, a, b, c, kernel);
    return bad;
}

std::uint64_t sweep_unipotency_equivalence(std::int64_t bound) {
    check_enumeration_bound(bound);
    const i64 w = 2 * bound + 1;
    const i64 chunks = w * w * w;
    std::uint64_t bad = 0;
#ifdef _OPENMP
#pragma omp parallel reduction(+ : bad)
    {
        UnipotencyKernel kernel;
#pragma omp for schedule(dynamic, 8)
        for (i64 idx = 0; idx < chunks; idx++) {
            i64 a = idx / (w * w) - bound;
            i64 b = (idx / w) % w - bound;
            i64 c = idx % w - bound;
            bad += sweep_prefix(bound, a, b, c, kernel);
        }
    }
#else
    bad = sweep_unipotency_equivalence_serial(bound);
#endif
    return bad;
}

MarkovReduction markov_reduce(const Rank3Coeffs& t) {
    if (markov_value(t) != 0)
        throw std::invalid_argument("markov_reduce: not a solution of the Markov equation");
    if (t.a == 0 && t.b == 0 && t.c == 0) return {{0, 0, 0}, {}};

    IntMatrix gram = gram_of(t);
    BraidWord word;
    auto apply = [&](const BraidWord& step) {
        for (const BraidGen& g : step) {
            gram = apply_gen(gram, g);
            word.push_back(g);
        }
    };
    auto triple = [&]() { return coeffs3_of(gram); };

    // Nonzero solutions have abc > 0: all positive or exactly two negative;
    // one sign change makes the triple positive.
    {
        Rank3Coeffs u = triple();
        if (u.a < 0 && u.b < 0) apply({eps(1)});
        else if (u.a < 0 && u.c < 0) apply({eps(2)});
        else if (u.b < 0 && u.c < 0) apply({eps(3)});
    }
    for (;;) {
        Rank3Coeffs u = triple();
        if (u.a <= 0 || u.b <= 0 || u.c <= 0)
            throw std::logic_error("markov_reduce: sign normalization failed");
        if (u.a == 3 && u.b == 3 && u.c == 3) break;
        Integer mx = std::max({u.a, u.b, u.c});
        // Vieta move on the largest coordinate, leftmost on ties.
        if (u.a == mx) apply({sigma_inv(2), eps(3)});       // (a,b,c) -> (b, bc-a, c)
        else if (u.b == mx) apply({sigma(2), eps(2)});      // (a,b,c) -> (ac-b, a, c)
        else apply({sigma(1), eps(1)});                     // (a,b,c) -> (a, ab-c, b)
        Rank3Coeffs v = triple();
        if (std::max({v.a, v.b, v.c}) >= mx)
            throw std::logic_error("markov_reduce: descent failed to decrease the maximum");
    }
    return {{3, 3, 3}, word};
}

}  // namespace slk
