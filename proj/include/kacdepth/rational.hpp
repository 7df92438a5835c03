#pragma once

#include <gmpxx.h>

#include <string>

namespace kacdepth {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

inline Rational rational_pow(const Rational& base, long e)
{
    Rational result = 1;
    Rational b = base;
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (n) {
        if (n & 1U)
            result *= b;
        b *= b;
        n >>= 1U;
    }
    if (invert)
        result = 1 / result;
    return result;
}

} // namespace kacdepth
