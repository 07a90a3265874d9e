#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mqra {

/// Exact rational number. All coefficient recurrences and exponent
/// bookkeeping that the pipeline requires to be exact run on this type;
/// conversion to double happens only at the evaluation boundary.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Canonical "num/den" form ("num" when den == 1), e.g. "-21/16", "3".
inline std::string rat_str(const Rat& q) { return q.get_str(); }

/// Parses "num/den" or "num". Throws on malformed input.
inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: \"" + s + "\"");
    q.canonicalize();
    return q;
}

inline double rat_d(const Rat& q) { return q.get_d(); }

/// q^k for integer k (k may be negative; q must be nonzero then).
inline Rat rat_pow(const Rat& q, long k) {
    if (k < 0) {
        if (q == 0) throw std::invalid_argument("0 raised to a negative power");
        return rat_pow(1 / q, -k);
    }
    Rat result(1), base(q);
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

/// Generalized binomial coefficient C(e, r) = e(e-1)...(e-r+1)/r! for
/// rational e and integer r >= 0, computed exactly.
inline Rat rat_binom(const Rat& e, int r) {
    if (r < 0) throw std::invalid_argument("negative binomial order");
    Rat result(1);
    for (int i = 0; i < r; ++i) {
        result *= (e - i);
        result /= (i + 1);
    }
    return result;
}

}  // namespace mqra
