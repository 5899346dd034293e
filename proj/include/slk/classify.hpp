#pragma once

#include <stdexcept>
#include <string>

#include "slk/blowup.hpp"
#include "slk/diophantine.hpp"
#include "slk/mutation.hpp"

namespace slk {

// Raised when the case analysis reaches a state it proves impossible.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

enum class ClassTag { Trivial, P2, Quadric, NumBlowup };

std::string to_string(ClassTag t);

struct CanonicalClass {
    ClassTag tag;
    Integer n = 0;  // meaningful for NumBlowup
    Integer delta;
    bool parity;  // s ≡ 1 mod 2 on the canonical representative

    friend bool operator==(const CanonicalClass& x, const CanonicalClass& y) {
        return x.tag == y.tag && (x.tag != ClassTag::NumBlowup || x.n == y.n);
    }
};

IntMatrix p2_gram();       // [[1,3,3],[0,1,3],[0,0,1]]
IntMatrix quadric_gram();  // [[1,2,2,4],[0,1,0,2],[0,0,1,2],[0,0,0,1]]

CanonicalClass make_class(ClassTag tag, const Integer& n = 0);
IntMatrix canonical_gram(const CanonicalClass& cls, int rank);

struct Verdict {
    CanonicalClass cls;
    BraidWord witness;     // applying it to the input reproduces `canonical`
    IntMatrix canonical;
    std::string note;      // short justification for the Trivial verdict
};

// True iff every entry of s - 1 is even (s must be integral).
bool s_parity(const IntMatrix& gram);

// Input must be an exceptional Gram matrix solving the rank-appropriate
// system; throws std::invalid_argument otherwise.
Verdict classify_rank3(const IntMatrix& gram);
Verdict classify_rank4(const IntMatrix& gram);
Verdict classify(const IntMatrix& gram);  // dispatches on the rank

struct Equivalence {
    enum class Kind { Yes, No, Unknown };
    Kind kind;
    BraidWord word;         // Yes: apply_word(m1, word) == m2
    std::string invariant;  // No: name of the separating invariant
};

Equivalence is_equivalent(const IntMatrix& m1, const IntMatrix& m2,
                          const Integer& max_entry, size_t max_nodes);

}  // namespace slk
