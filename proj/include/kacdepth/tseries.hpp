#pragma once

#include <kacdepth/rat_func.hpp>

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

using Exponent = std::vector<int>;

/// Power series in t_0..t_{n-1} with RatFunc coefficients, truncated
/// componentwise: only exponents with 0 <= r_i <= bound_i are kept.
class TSeries {
public:
    TSeries() = default;
    explicit TSeries(Exponent bound) : bound_(std::move(bound))
    {
        for (int b : bound_)
            if (b < 0)
                throw std::invalid_argument("negative truncation bound");
    }

    static TSeries constant(const Exponent& bound, const RatFunc& c)
    {
        TSeries s(bound);
        s.add_term(Exponent(bound.size(), 0), c);
        return s;
    }

    static TSeries monomial(const Exponent& bound, const Exponent& r, const RatFunc& c)
    {
        TSeries s(bound);
        s.add_term(r, c);
        return s;
    }

    std::size_t nvars() const { return bound_.size(); }
    const Exponent& bound() const { return bound_; }
    const std::map<Exponent, RatFunc>& terms() const { return terms_; }
    int total_bound() const { return std::accumulate(bound_.begin(), bound_.end(), 0); }

    bool within_bound(const Exponent& r) const
    {
        if (r.size() != bound_.size())
            throw std::invalid_argument("exponent vector has wrong length");
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] < 0 || r[i] > bound_[i])
                return false;
        return true;
    }

    // Terms beyond the bound are discarded.
    void add_term(const Exponent& r, const RatFunc& c)
    {
        if (c.is_zero() || !within_bound(r))
            return;
        auto [it, inserted] = terms_.try_emplace(r, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    RatFunc coeff(const Exponent& r) const
    {
        auto it = terms_.find(r);
        return it == terms_.end() ? RatFunc() : it->second;
    }

    RatFunc constant_term() const { return coeff(Exponent(bound_.size(), 0)); }
    bool is_zero() const { return terms_.empty(); }

    TSeries& operator+=(const TSeries& o)
    {
        check_compatible(o);
        for (const auto& [r, c] : o.terms_)
            add_term(r, c);
        return *this;
    }
    TSeries& operator-=(const TSeries& o)
    {
        check_compatible(o);
        for (const auto& [r, c] : o.terms_)
            add_term(r, -c);
        return *this;
    }
    TSeries& operator*=(const RatFunc& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [r, c] : terms_)
            c *= s;
        return *this;
    }

    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
    friend TSeries operator*(TSeries a, const RatFunc& s) { return a *= s; }
    friend TSeries operator*(const TSeries& a, const TSeries& b)
    {
        a.check_compatible(b);
        TSeries out(a.bound_);
        Exponent r(a.bound_.size());
        for (const auto& [ra, ca] : a.terms_) {
            for (const auto& [rb, cb] : b.terms_) {
                bool ok = true;
                for (std::size_t i = 0; i < r.size(); ++i) {
                    r[i] = ra[i] + rb[i];
                    if (r[i] > a.bound_[i]) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    out.add_term(r, ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const TSeries& a, const TSeries& b) { return a.bound_ == b.bound_ && a.terms_ == b.terms_; }
    friend bool operator!=(const TSeries& a, const TSeries& b) { return !(a == b); }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [r, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += "[" + c.to_string() + "]";
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i])
                    out += "*t" + std::to_string(i) + (r[i] > 1 ? "^" + std::to_string(r[i]) : "");
        }
        return out;
    }

private:
    void check_compatible(const TSeries& o) const
    {
        if (o.bound_ != bound_)
            throw std::invalid_argument("series with different truncation bounds");
    }

    Exponent bound_;
    std::map<Exponent, RatFunc> terms_;
};

/// Ordinary exponential exp(F) = sum_k F^k / k!, truncated to F's bound.
inline TSeries series_exp(const TSeries& f)
{
    if (!f.constant_term().is_zero())
        throw std::invalid_argument("exp requires augmentation-ideal input");
    TSeries result = TSeries::constant(f.bound(), RatFunc(1));
    TSeries power = result;
    const int kmax = f.total_bound();
    for (int k = 1; k <= kmax; ++k) {
        power = power * f;
        if (power.is_zero())
            break;
        power *= RatFunc(make_rational(1, k));
        result += power;
    }
    return result;
}

/// log(F) for F with constant term 1: sum_k (-1)^{k+1} (F-1)^k / k.
inline TSeries series_log(const TSeries& f)
{
    if (f.constant_term() != RatFunc(1))
        throw std::invalid_argument("log requires unit constant term");
    TSeries g = f - TSeries::constant(f.bound(), RatFunc(1));
    TSeries result(f.bound());
    TSeries power = TSeries::constant(f.bound(), RatFunc(1));
    const int kmax = f.total_bound();
    for (int k = 1; k <= kmax; ++k) {
        power = power * g;
        if (power.is_zero())
            break;
        result += power * RatFunc(make_rational(k % 2 ? 1 : -1, k));
    }
    return result;
}

} // namespace kacdepth
