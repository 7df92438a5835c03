#pragma once

#include <kacdepth/rational.hpp>

#include <cctype>
#include <climits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kacdepth {

/// Laurent polynomial in q with rational coefficients, stored sparsely.
/// Zero coefficients are never stored, so the zero polynomial is the empty map.
class LaurentPoly {
public:
    using Terms = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { add_term(0, c); }
    LaurentPoly(long c) { add_term(0, Rational(c)); }

    static LaurentPoly monomial(const Rational& c, int e)
    {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }
    static LaurentPoly q(int e = 1) { return monomial(Rational(1), e); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Highest / lowest exponent; both undefined (INT_MIN / INT_MAX) for zero.
    int degree() const { return terms_.empty() ? INT_MIN : terms_.rbegin()->first; }
    int low_degree() const { return terms_.empty() ? INT_MAX : terms_.begin()->first; }
    Rational leading_coeff() const { return terms_.empty() ? Rational(0) : terms_.rbegin()->second; }

    Rational coeff(int e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int e, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    bool is_polynomial() const { return terms_.empty() || low_degree() >= 0; }

    bool has_integer_coeffs() const
    {
        for (const auto& [e, c] : terms_)
            if (c.get_den() != 1)
                return false;
        return true;
    }

    bool has_nonnegative_coeffs() const
    {
        for (const auto& [e, c] : terms_)
            if (c < 0)
                return false;
        return true;
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a)
    {
        for (auto& [e, c] : a.terms_)
            c = -c;
        return a;
    }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
    friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly pow(unsigned n) const
    {
        LaurentPoly result(1);
        LaurentPoly base = *this;
        while (n) {
            if (n & 1U)
                result *= base;
            n >>= 1U;
            if (n)
                base *= base;
        }
        return result;
    }

    // Multiply by q^s.
    LaurentPoly shifted(int s) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            r.terms_.emplace_hint(r.terms_.end(), e + s, c);
        return r;
    }

    // q -> q^m.
    LaurentPoly substitute_power(int m) const
    {
        if (m <= 0)
            throw std::invalid_argument("invalid Adams index");
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            r.terms_.emplace_hint(r.terms_.end(), e * m, c);
        return r;
    }

    Rational eval(const Rational& x) const
    {
        if (x == 0 && !is_polynomial())
            throw std::domain_error("evaluating a Laurent polynomial with negative exponents at 0");
        Rational acc = 0;
        for (const auto& [e, c] : terms_)
            acc += c * rational_pow(x, e);
        return acc;
    }

    // Descending-exponent text form, e.g. "q^2+2q+1", "q^-1", "(1/2)q^3".
    std::string to_string(const std::string& var = "q") const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational mag = abs(c);
            if (c < 0)
                out += first ? "-" : "-";
            else if (!first)
                out += "+";
            first = false;
            bool unit = mag == 1;
            if (e == 0) {
                out += mag.get_str();
                continue;
            }
            if (!unit)
                out += mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")";
            out += var;
            if (e != 1)
                out += "^" + std::to_string(e);
        }
        return out;
    }

private:
    Terms terms_;
};

namespace detail {

// Dense polynomial, index = exponent, no trailing zeros; empty = 0.
using DensePoly = std::vector<Rational>;

inline void trim(DensePoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Requires a polynomial (no negative exponents).
inline DensePoly to_dense(const LaurentPoly& p)
{
    DensePoly d;
    if (p.is_zero())
        return d;
    if (p.low_degree() < 0)
        throw std::logic_error("to_dense: negative exponent");
    d.assign(static_cast<std::size_t>(p.degree()) + 1, Rational(0));
    for (const auto& [e, c] : p.terms())
        d[static_cast<std::size_t>(e)] = c;
    return d;
}

inline LaurentPoly from_dense(const DensePoly& d, int shift = 0)
{
    LaurentPoly p;
    for (std::size_t i = 0; i < d.size(); ++i)
        p.add_term(static_cast<int>(i) + shift, d[i]);
    return p;
}

// a = quot * b + rem.
inline std::pair<DensePoly, DensePoly> divmod(DensePoly a, const DensePoly& b)
{
    if (b.empty())
        throw std::domain_error("division by zero");
    trim(a);
    if (a.size() < b.size())
        return {DensePoly{}, a};
    DensePoly quot(a.size() - b.size() + 1, Rational(0));
    const Rational inv_lead = 1 / b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0)
            continue;
        Rational f = a[i] * inv_lead;
        std::size_t shift = i - (b.size() - 1);
        quot[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= f * b[j];
        if (i == 0)
            break;
    }
    trim(a);
    trim(quot);
    return {quot, a};
}

inline void make_monic(DensePoly& p)
{
    if (p.empty() || p.back() == 1)
        return;
    const Rational inv = 1 / p.back();
    for (auto& c : p)
        c *= inv;
}

inline DensePoly gcd(DensePoly a, DensePoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(std::move(a), b).second;
        make_monic(r);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

} // namespace detail

// Exact quotient a / b for Laurent polynomials; throws if b does not divide a.
inline LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b)
{
    if (b.is_zero())
        throw std::domain_error("division by zero");
    if (a.is_zero())
        return {};
    const int sa = a.low_degree();
    const int sb = b.low_degree();
    auto [quot, rem] = detail::divmod(detail::to_dense(a.shifted(-sa)), detail::to_dense(b.shifted(-sb)));
    if (!rem.empty())
        throw std::domain_error("exact_divide: remainder is nonzero");
    return detail::from_dense(quot, sa - sb);
}

/// Parse text such as "q^4 + q^3 + 2 q^2", "2q^{-1} - 3", "(1/2)q^3" or "q".
/// Spaces, '*' and braces around exponents are ignored.
inline LaurentPoly parse_laurent(const std::string& text, char var = 'q')
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '*' && c != '{' && c != '}' && c != '\t' && c != '\n')
            s += c;
    if (s.empty())
        throw std::invalid_argument("empty polynomial text");
    LaurentPoly r;
    std::size_t i = 0;
    auto fail = [&]() { throw std::invalid_argument("malformed polynomial: " + text); };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail();
        }
        Rational coeff(1);
        bool have_coeff = false;
        if (i < s.size() && s[i] == '(') {
            const std::size_t close = s.find(')', i);
            if (close == std::string::npos)
                fail();
            coeff = Rational(s.substr(i + 1, close - i - 1));
            coeff.canonicalize();
            i = close + 1;
            have_coeff = true;
        } else {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            if (j > i) {
                coeff = Rational(s.substr(i, j - i));
                coeff.canonicalize();
                have_coeff = true;
                i = j;
            }
        }
        int exp = 0;
        if (i < s.size() && s[i] == var) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t j = i;
                if (j < s.size() && s[j] == '-')
                    ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                    ++j;
                if (j == i || (j == i + 1 && s[i] == '-'))
                    fail();
                exp = std::stoi(s.substr(i, j - i));
                i = j;
            }
        } else if (!have_coeff) {
            fail();
        }
        r.add_term(exp, sign * coeff);
    }
    return r;
}

} // namespace kacdepth
