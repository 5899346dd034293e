#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace slk {

// Arbitrary-precision scalars. Mutation words grow Gram entries like Markov
// numbers, so fixed-width integers are not an option on that path.
using Integer = mpz_class;
using Rational = mpq_class;

using Element = std::vector<Integer>;  // lattice element in basis coordinates
using QVec = std::vector<Rational>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Element elem_add(const Element& a, const Element& b) {
    Element r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] + b[i];
    return r;
}

inline Element elem_sub(const Element& a, const Element& b) {
    Element r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] - b[i];
    return r;
}

inline Element elem_scale(const Integer& c, const Element& a) {
    Element r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = c * a[i];
    return r;
}

inline Element elem_neg(const Element& a) {
    Element r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = -a[i];
    return r;
}

inline bool elem_is_zero(const Element& a) {
    for (const Integer& x : a)
        if (x != 0) return false;
    return true;
}

}  // namespace slk
