#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcad {

// Exact rational arithmetic. mpq_class already maintains the canonical form we
// need (reduced fraction, positive denominator, 0/1 for zero).
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational abs_val(const Rational& q) { return abs(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Floor of log2(|q|) style magnitude estimate is not needed; midpoints and
// exact comparisons cover everything the algorithms do.

inline Rational pow_rat(const Rational& q, unsigned long e) {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), e);
    Rational r(n, d);  // already coprime since q was canonical
    return r;
}

inline bool is_perfect_square(const Integer& z, Integer* root = nullptr) {
    if (sgn(z) < 0) return false;
    Integer r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), z.get_mpz_t());
    if (root) *root = r;
    return rem == 0;
}

}  // namespace gcad
