#pragma once

#include <kacdepth/tseries.hpp>

#include <stdexcept>

namespace kacdepth {

// A TSeries read as an element of the lambda-ring of counting functions:
// q lives inside the coefficients, the t_i outside.
using PlethSeries = TSeries;

/// Adams operator: q -> q^m inside every coefficient and t^r -> t^{m r}.
inline PlethSeries adams(const PlethSeries& f, int m)
{
    if (m <= 0)
        throw std::invalid_argument("invalid Adams index");
    PlethSeries out(f.bound());
    Exponent r(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            r[i] = e[i] * m;
        if (out.within_bound(r))
            out.add_term(r, m == 1 ? c : c.substitute_power(m));
    }
    return out;
}

/// Moebius function, by trial division.
inline int moebius(int n)
{
    if (n <= 0)
        throw std::invalid_argument("moebius: n must be positive");
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

/// Plethystic exponential Exp(F) = exp(sum_{m>=1} psi_m(F) / m).
/// psi_m(F) starts in total degree >= m, so m beyond the total bound adds nothing.
inline PlethSeries pleth_exp(const PlethSeries& f)
{
    if (!f.constant_term().is_zero())
        throw std::invalid_argument("plethystic exponential requires zero constant term");
    PlethSeries sum(f.bound());
    for (int m = 1; m <= f.total_bound(); ++m)
        sum += adams(f, m) * RatFunc(make_rational(1, m));
    return series_exp(sum);
}

/// Inverse of pleth_exp via Moebius inversion: Log(F) = sum_m mu(m)/m psi_m(log F).
inline PlethSeries pleth_log(const PlethSeries& f)
{
    if (f.constant_term() != RatFunc(1))
        throw std::invalid_argument("plethystic logarithm requires unit constant term");
    const PlethSeries l = series_log(f);
    PlethSeries out(f.bound());
    for (int m = 1; m <= f.total_bound(); ++m) {
        int mu = moebius(m);
        if (mu == 0)
            continue;
        out += adams(l, m) * RatFunc(make_rational(mu, m));
    }
    return out;
}

} // namespace kacdepth
