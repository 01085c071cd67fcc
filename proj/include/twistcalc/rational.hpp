#pragma once

#include <gmpxx.h>

#include <string>

#include "twistcalc/errors.hpp"

namespace twistcalc {

using Int = mpz_class;
using Rat = mpq_class;

/// The two-argument mpq_class constructor does not canonicalize; this does.
inline Rat make_rational(long num, long den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& base, long n) {
    if (n == 0) return Rat(1);
    Rat b = base;
    if (n < 0) {
        if (b == 0) throw DomainError("rat_pow: zero base with negative exponent");
        b = Rat(1) / b;
        n = -n;
    }
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

/// C(n, k) for n possibly negative is not needed; this is the plain binomial.
inline Int binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// Canonical "p/q" (or "p" when q = 1) rendering, matching mpq_class::get_str.
inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat x;
    if (mpq_set_str(x.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("rational: cannot parse \"" + s + "\"");
    if (x.get_den() == 0) throw ParseError("rational: zero denominator in \"" + s + "\"");
    x.canonicalize();
    return x;
}

} // namespace twistcalc
