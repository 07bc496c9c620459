#pragma once

#include <gmpxx.h>

#include <string>

namespace torusloops {

/// Exact rational number; mpq_class keeps the canonical reduced form after every operation.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "num/den" with the denominator always present.
inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Compact form: "n" for integers, "num/den" otherwise.
inline std::string to_short_string(const Rational& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return to_string(r);
}

Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Largest integer not above r.
inline long floor_long(const Rational& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

inline long ceil_long(const Rational& r)
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

}  // namespace torusloops
