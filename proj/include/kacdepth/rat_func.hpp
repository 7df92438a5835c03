#pragma once

#include <kacdepth/laurent_poly.hpp>

#include <stdexcept>
#include <string>

namespace kacdepth {

/// Reduced fraction of Laurent polynomials in q.
///
/// Canonical form: the denominator is a polynomial with nonzero constant
/// term and leading coefficient 1, and it is coprime to the numerator once
/// the numerator's power of q is factored out. Two equal fractions therefore
/// have identical representations, and operator== is representation equality.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}

    static RatFunc make(const LaurentPoly& num, const LaurentPoly& den)
    {
        RatFunc r;
        r.assign_normalized(num, den);
        return r;
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent_poly() const { return den_ == LaurentPoly(1); }

    const LaurentPoly& as_laurent_poly() const
    {
        if (!is_laurent_poly())
            throw std::domain_error("rational function is not a Laurent polynomial: " + to_string());
        return num_;
    }

    RatFunc& operator+=(const RatFunc& o)
    {
        if (o.is_zero())
            return *this;
        if (is_zero())
            return *this = o;
        if (den_ == o.den_)
            assign_normalized(num_ + o.num_, den_);
        else
            assign_normalized(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        return *this;
    }
    RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
    RatFunc& operator*=(const RatFunc& o)
    {
        if (is_zero() || o.is_zero())
            return *this = RatFunc();
        if (is_laurent_poly() && o.is_laurent_poly()) {
            num_ *= o.num_;
            return *this;
        }
        assign_normalized(num_ * o.num_, den_ * o.den_);
        return *this;
    }
    RatFunc& operator/=(const RatFunc& o)
    {
        if (o.is_zero())
            throw std::domain_error("division by zero");
        assign_normalized(num_ * o.den_, den_ * o.num_);
        return *this;
    }

    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(RatFunc a)
    {
        a.num_ = -a.num_;
        return a;
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(int n) const
    {
        if (n < 0)
            return RatFunc(1) / pow(-n);
        RatFunc r = make(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
        return r;
    }

    // Adams operator on counting functions: q -> q^m.
    RatFunc substitute_power(int m) const
    {
        if (m <= 0)
            throw std::invalid_argument("invalid Adams index");
        return make(num_.substitute_power(m), den_.substitute_power(m));
    }

    Rational eval(const Rational& x) const
    {
        Rational d = den_.eval(x);
        if (d == 0)
            throw std::domain_error("evaluation at a pole");
        return num_.eval(x) / d;
    }

    std::string to_string() const
    {
        if (is_laurent_poly())
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void assign_normalized(const LaurentPoly& num, const LaurentPoly& den)
    {
        if (den.is_zero())
            throw std::domain_error("division by zero");
        if (num.is_zero()) {
            num_ = LaurentPoly();
            den_ = LaurentPoly(1);
            return;
        }
        const int u = num.low_degree();
        const int w = den.low_degree();
        detail::DensePoly n = detail::to_dense(num.shifted(-u));
        detail::DensePoly d = detail::to_dense(den.shifted(-w));
        if (d.size() > 1) {
            detail::DensePoly g = detail::gcd(n, d);
            if (g.size() > 1) {
                n = detail::divmod(std::move(n), g).first;
                d = detail::divmod(std::move(d), g).first;
            }
        }
        const Rational inv = 1 / d.back();
        if (inv != 1) {
            for (auto& c : n)
                c *= inv;
            for (auto& c : d)
                c *= inv;
        }
        num_ = detail::from_dense(n, u - w);
        den_ = detail::from_dense(d, 0);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

/// Canonical reduced form of num/den.
inline RatFunc ratfunc_normalize(const LaurentPoly& num, const LaurentPoly& den)
{
    return RatFunc::make(num, den);
}

inline RatFunc substitute_power(const RatFunc& f, int m)
{
    return f.substitute_power(m);
}

// (1 - q^{-1}), used throughout the counting identities.
inline RatFunc one_minus_q_inv()
{
    return RatFunc(LaurentPoly(1) - LaurentPoly::q(-1));
}

} // namespace kacdepth
