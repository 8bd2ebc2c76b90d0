#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cmbound {

using Integer = mpz_class;
using Rational = mpq_class;

/* Accepts "n", "-n" or "p/q" (no decimal points). */
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
/* Decimal rendering, rounded to the given number of fractional digits. */
std::string to_decimal(const Rational& x, int digits);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Integer isqrt(const Integer& x);  // floor(sqrt(x)), x >= 0
bool is_square(const Integer& x);

Integer ipow(const Integer& base, unsigned long exp);
Rational qpow(const Rational& base, long exp);

/* Nearest multiple of 2^-bits (ties away from zero). */
Rational round_dyadic(const Rational& x, long bits);
/* Smallest multiple of 2^-bits that is >= x. */
Rational ceil_dyadic(const Rational& x, long bits);

/* Rational upper/lower bounds for sqrt(x), x >= 0, with absolute error at most 2^-bits. */
Rational sqrt_upper(const Rational& x, long bits);
Rational sqrt_lower(const Rational& x, long bits);

int sign(const Rational& x);
int sign(const Integer& x);

inline Rational power_of_two(long e)
{
    Rational r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

}  // namespace cmbound
