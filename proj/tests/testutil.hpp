#pragma once

#include <random>
#include <string>
#include <vector>

#include "slk/classify.hpp"
#include "slk/io.hpp"

namespace slk::test {

inline IntMatrix gram(const std::string& text) { return parse_matrix_document(text).gram; }

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
};

inline IntMatrix random_unitriangular(Rng& rng, int n, long lo = -9, long hi = 9) {
    IntMatrix m = IntMatrix::identity(n);
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) m.at(i, j) = rng.pick(lo, hi);
    return m;
}

inline BraidWord random_word(Rng& rng, int rank, int len) {
    BraidWord w;
    for (int i = 0; i < len; i++) {
        switch (rng.pick(0, 2)) {
            case 0: w.push_back(sigma(int(rng.pick(1, rank - 1)))); break;
            case 1: w.push_back(sigma_inv(int(rng.pick(1, rank - 1)))); break;
            default: w.push_back(eps(int(rng.pick(1, rank)))); break;
        }
    }
    return w;
}

// Random surface* Gram matrix: mutated canonical representative.
inline IntMatrix random_surface_star(Rng& rng, int rank, int word_len = 6) {
    IntMatrix seed;
    if (rank == 3) {
        seed = p2_gram();
    } else {
        switch (rng.pick(0, 4)) {
            case 0: seed = quadric_gram(); break;
            case 1: seed = build_Kn(0); break;
            case 2: seed = build_Kn(1); break;
            case 3: seed = build_Kn(2); break;
            default: seed = build_Kn(4); break;  // K3 is excluded: not surface*
        }
    }
    return apply_word(seed, random_word(rng, rank, word_len));
}

}  // namespace slk::test
