#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "slk/mutation.hpp"

namespace slk {

struct Rank3Coeffs {
    Integer a, b, c;
    friend bool operator==(const Rank3Coeffs&, const Rank3Coeffs&) = default;
};

struct Rank4Coeffs {
    Integer a, b, c, d, e, f;
    friend bool operator==(const Rank4Coeffs&, const Rank4Coeffs&) = default;
    friend bool operator<(const Rank4Coeffs& x, const Rank4Coeffs& y) {
        return std::tie(x.a, x.b, x.c, x.d, x.e, x.f) < std::tie(y.a, y.b, y.c, y.d, y.e, y.f);
    }
};

IntMatrix gram_of(const Rank3Coeffs& t);
IntMatrix gram_of(const Rank4Coeffs& t);
Rank3Coeffs coeffs3_of(const IntMatrix& gram);
Rank4Coeffs coeffs4_of(const IntMatrix& gram);

// a² + b² + c² - abc
Integer markov_value(const Rank3Coeffs& t);

// (q1, q2) with q1 = acdf - abd - ace - bcf - def + a²+b²+c²+d²+e²+f²
// and q2 = af - be + cd.
std::pair<Integer, Integer> rank4_values(const Rank4Coeffs& t);

// True iff [s unipotent] <=> [q1 = 0 and q2 = 0], additionally asserting the
// exact coefficient identities χ1 = q1 - 4 and χ2 = q2² - 2 q1 + 6.
bool unipotency_equivalence_check(const Rank4Coeffs& t);

// Fast path without the χ identities (used by the box sweeps).
bool unipotent_iff_solution(const Rank4Coeffs& t);

// All tuples with max |entry| <= bound and q1 = q2 = 0, lexicographically
// ordered. Prunes through q2 (linear in f) before evaluating q1.
// OpenMP-parallel over the (a,b,c) prefix space when enabled; the output is
// deterministic either way. Bound must stay below 2^15 so the pruned int64
// evaluation cannot overflow.
std::vector<Rank4Coeffs> enumerate_rank4(std::int64_t bound);

// Serial reference implementation of the same pruned enumeration.
std::vector<Rank4Coeffs> enumerate_rank4_serial(std::int64_t bound);

// Checks unipotent_iff_solution (and rank(s-1) <= 2 whenever s is unipotent)
// for every tuple with entries in [-bound, bound]; returns the number of
// violations (0 expected). OpenMP-parallel kernel plus a serial reference.
std::uint64_t sweep_unipotency_equivalence(std::int64_t bound);
std::uint64_t sweep_unipotency_equivalence_serial(std::int64_t bound);

struct MarkovReduction {
    Rank3Coeffs canonical;  // (3,3,3), or (0,0,0) for the zero solution
    BraidWord word;         // witnesses the reduction on the Gram matrix
};

// Markov descent to the base solution; input must satisfy markov_value = 0.
MarkovReduction markov_reduce(const Rank3Coeffs& t);

}  // namespace slk
