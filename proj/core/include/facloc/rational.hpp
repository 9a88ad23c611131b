#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace facloc {

/// Exact rational number. All combinatorial bookkeeping of the 1-D engine
/// stays in this type; doubles appear only at reporting boundaries.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// 3^(-j) * 2^(-h) for integer exponents of either sign.
inline Rational pow3_2(long j, long h) {
    BigInt num = 1, den = 1;
    if (j >= 0) mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(j));
    else        mpz_ui_pow_ui(num.get_mpz_t(), 3, static_cast<unsigned long>(-j));
    BigInt p2;
    if (h >= 0) {
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(h));
        den *= p2;
    } else {
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-h));
        num *= p2;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace facloc
