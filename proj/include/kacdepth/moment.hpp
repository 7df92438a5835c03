#pragma once

#include <kacdepth/errors.hpp>
#include <kacdepth/finite_ring.hpp>
#include <kacdepth/kac_toric.hpp>
#include <kacdepth/plethysm.hpp>
#include <kacdepth/quiver.hpp>
#include <kacdepth/rank_engine.hpp>

#include <algorithm>
#include <climits>
#include <functional>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

/// Per-vertex target value of the moment map, one r_i x r_i matrix per vertex.
struct MomentTarget {
    std::vector<OMatrix> blocks;

    static MomentTarget zero(const std::vector<int>& r, int p, int alpha)
    {
        MomentTarget t;
        for (int ri : r)
            t.blocks.emplace_back(ri, ri, p, alpha);
        return t;
    }

    // t^{alpha-1} lambda_i Id at vertex i.
    static MomentTarget scaled_identity(const std::vector<long>& lambda, const std::vector<int>& r, int p, int alpha)
    {
        if (lambda.size() != r.size())
            throw std::invalid_argument("lambda and rank vector differ in length");
        MomentTarget t;
        for (std::size_t i = 0; i < r.size(); ++i)
            t.blocks.push_back(OMatrix::scalar(r[i], OElem::t_power(p, alpha, alpha - 1, lambda[i])));
        return t;
    }
};

/// lambda . r = 0 and lambda . r' != 0 for every 0 < r' < r.
inline bool genericity_check(const std::vector<long>& lambda, const std::vector<int>& r)
{
    if (lambda.size() != r.size())
        throw std::invalid_argument("lambda and rank vector differ in length");
    long dot = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        dot += lambda[i] * r[i];
    if (dot != 0)
        return false;
    std::vector<int> rp(r.size(), 0);
    while (true) {
        std::size_t k = 0;
        for (; k < rp.size(); ++k) {
            if (++rp[k] <= r[k])
                break;
            rp[k] = 0;
        }
        if (k == rp.size())
            break;
        if (rp == r)
            continue;
        long d = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
            d += lambda[i] * rp[i];
        if (d == 0)
            return false;
    }
    return true;
}

/// Exhaustive count of (x, y) in the doubled representation space with
/// mu_i = sum_{t(a)=i} x_a y_a - sum_{s(a)=i} y_a x_a equal to the target.
inline std::uint64_t brute_moment_fiber(const Quiver& q, const std::vector<int>& r, int p, int alpha,
                                        const MomentTarget& target, std::uint64_t guard = kDefaultGuard)
{
    if (r.size() != static_cast<std::size_t>(q.nvertices()))
        throw std::invalid_argument("rank vector must have one entry per vertex");
    for (int ri : r)
        if (ri < 0)
            throw std::invalid_argument("negative rank");
    if (target.blocks.size() != r.size())
        throw std::invalid_argument("moment target has wrong number of blocks");
    const RingTables ring(p, alpha);
    const std::uint64_t N = static_cast<std::uint64_t>(ring.size());

    // variable layout: per arrow, x_a (r_t x r_s) then y_a (r_s x r_t)
    struct Block {
        int s, t, rs, rt;
        std::size_t xoff, yoff;
    };
    std::vector<Block> blocks;
    std::size_t nvars = 0;
    for (const auto& a : q.arrows()) {
        Block b{a.source, a.target, r[static_cast<std::size_t>(a.source)], r[static_cast<std::size_t>(a.target)], 0, 0};
        b.xoff = nvars;
        nvars += static_cast<std::size_t>(b.rt * b.rs);
        b.yoff = nvars;
        nvars += static_cast<std::size_t>(b.rs * b.rt);
        blocks.push_back(b);
    }
    check_guard(checked_power(N, nvars), guard);

    std::vector<std::size_t> moff(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        moff[i + 1] = moff[i] + static_cast<std::size_t>(r[i] * r[i]);
    std::vector<int> want(moff.back());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int a = 0; a < r[i]; ++a)
            for (int b = 0; b < r[i]; ++b)
                want[moff[i] + static_cast<std::size_t>(a * r[i] + b)] = ring.encode(target.blocks[i](a, b));

    std::vector<int> v(nvars, 0);
    std::vector<int> mu(moff.back());
    std::uint64_t count = 0;
    while (true) {
        std::fill(mu.begin(), mu.end(), 0);
        for (const auto& b : blocks) {
            // + x y at the target vertex (r_t x r_t)
            const std::size_t tt = moff[static_cast<std::size_t>(b.t)];
            for (int i = 0; i < b.rt; ++i)
                for (int j = 0; j < b.rt; ++j) {
                    int acc = mu[tt + static_cast<std::size_t>(i * b.rt + j)];
                    for (int k = 0; k < b.rs; ++k)
                        acc = ring.add(acc, ring.mul(v[b.xoff + static_cast<std::size_t>(i * b.rs + k)],
                                                     v[b.yoff + static_cast<std::size_t>(k * b.rt + j)]));
                    mu[tt + static_cast<std::size_t>(i * b.rt + j)] = acc;
                }
            // - y x at the source vertex (r_s x r_s)
            const std::size_t ss = moff[static_cast<std::size_t>(b.s)];
            for (int i = 0; i < b.rs; ++i)
                for (int j = 0; j < b.rs; ++j) {
                    int acc = mu[ss + static_cast<std::size_t>(i * b.rs + j)];
                    for (int k = 0; k < b.rt; ++k)
                        acc = ring.sub(acc, ring.mul(v[b.yoff + static_cast<std::size_t>(i * b.rt + k)],
                                                     v[b.xoff + static_cast<std::size_t>(k * b.rs + j)]));
                    mu[ss + static_cast<std::size_t>(i * b.rs + j)] = acc;
                }
        }
        if (mu == want)
            ++count;
        std::size_t k = 0;
        for (; k < nvars; ++k) {
            if (++v[k] < ring.size())
                break;
            v[k] = 0;
        }
        if (k == nvars)
            break;
    }
    return count;
}

namespace detail {

inline std::vector<long> to_long(const std::vector<int>& v)
{
    return std::vector<long>(v.begin(), v.end());
}

inline bool is_toric_rank(const std::vector<int>& r)
{
    for (int x : r)
        if (x != 0 && x != 1)
            return false;
    return true;
}

// Vertices with r_i = 1.
inline std::vector<int> support_of(const std::vector<int>& r)
{
    std::vector<int> s;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i])
            s.push_back(static_cast<int>(i));
    return s;
}

} // namespace detail

/// A_{Q,r,alpha} for the rank vectors covered here: toric ranks via the chain
/// formula on the supporting subquiver, and rank 2 or 3 on a one-vertex quiver.
inline LaurentPoly kac_polynomial(const Quiver& q, const std::vector<int>& r, int alpha)
{
    if (r.size() != static_cast<std::size_t>(q.nvertices()))
        throw std::invalid_argument("rank vector must have one entry per vertex");
    if (detail::is_toric_rank(r)) {
        const auto sub = restrict_vertices(q, detail::support_of(r));
        if (sub.quiver.nvertices() == 0)
            return LaurentPoly();
        return wyss_kac(sub.quiver, alpha);
    }
    if (q.nvertices() == 1 && r[0] <= 3) {
        const int g = q.narrows();
        if (g == 0)
            return LaurentPoly();
        return moments_to_kac(g, alpha, r[0])[static_cast<std::size_t>(r[0] - 1)];
    }
    throw std::invalid_argument("rank out of implemented range");
}

struct IdentityCoefficient {
    std::vector<int> rank;
    Rational lhs;
    Rational rhs;
    std::uint64_t fiber_count = 0;
    bool equal = false;
};

struct ExpIdentityReport {
    std::vector<IdentityCoefficient> coefficients;
    bool ok = true;
};

/// Coefficientwise check of
///   sum_r q^{alpha<r,r>} #mu^{-1}(0)/#GL(r) t^r = Exp(sum_{r != 0} A_r/(1-q^{-1}) t^r)
/// at q = p, for all 0 < r <= bound.
inline ExpIdentityReport verify_exp_identity(const Quiver& q, int p, int alpha, const std::vector<int>& bound,
                                             std::uint64_t guard = kDefaultGuard)
{
    if (bound.size() != static_cast<std::size_t>(q.nvertices()))
        throw std::invalid_argument("bound must have one entry per vertex");
    const bool toric = detail::is_toric_rank(bound);
    if (!toric && !(q.nvertices() == 1 && bound[0] <= 2))
        throw std::invalid_argument("rank out of implemented range");

    const Exponent tb(bound.begin(), bound.end());
    std::vector<std::vector<int>> ranks;
    {
        std::vector<int> r(bound.size(), 0);
        while (true) {
            std::size_t k = 0;
            for (; k < r.size(); ++k) {
                if (++r[k] <= bound[k])
                    break;
                r[k] = 0;
            }
            if (k == r.size())
                break;
            ranks.push_back(r);
        }
    }

    PlethSeries f(tb);
    for (const auto& r : ranks)
        f.add_term(Exponent(r.begin(), r.end()), RatFunc(kac_polynomial(q, r, alpha)) / one_minus_q_inv());
    const PlethSeries e = pleth_exp(f);

    ExpIdentityReport rep;
    for (const auto& r : ranks) {
        IdentityCoefficient c;
        c.rank = r;
        c.fiber_count = brute_moment_fiber(q, r, p, alpha, MomentTarget::zero(r, p, alpha), guard);
        const long ee = euler_form(q, detail::to_long(r), detail::to_long(r));
        const Rational gl = group_order_gl(r, alpha).eval(Rational(p));
        c.lhs = rational_pow(Rational(p), static_cast<long>(alpha) * ee) * Rational(Integer(static_cast<unsigned long>(c.fiber_count))) / gl;
        c.rhs = e.coeff(Exponent(r.begin(), r.end())).eval(Rational(p));
        c.equal = c.lhs == c.rhs;
        rep.ok = rep.ok && c.equal;
        rep.coefficients.push_back(std::move(c));
    }
    return rep;
}

struct GenericFiberReport {
    std::uint64_t fiber_count = 0;
    Rational group_order;
    Rational lhs;
    Rational rhs;
    LaurentPoly kac;
    bool equal = false;
};

/// #mu^{-1}(t^{alpha-1} lambda)/#GL(r) = q^{-alpha<r,r>} A_{Q,r,alpha}/(1-q^{-1}) at q = p.
inline GenericFiberReport verify_generic_fiber(const Quiver& q, const std::vector<int>& r, const std::vector<long>& lambda,
                                               int p, int alpha, std::uint64_t guard = kDefaultGuard)
{
    if (r.size() != static_cast<std::size_t>(q.nvertices()))
        throw std::invalid_argument("rank vector must have one entry per vertex");
    if (!detail::is_toric_rank(r))
        throw std::invalid_argument("rank out of implemented range");
    if (!genericity_check(lambda, r))
        throw std::invalid_argument("lambda not generic");
    long weight = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        weight += std::labs(lambda[i]) * r[i];
    if (p <= weight)
        throw std::invalid_argument("characteristic bound violated: need p > " + std::to_string(weight));

    const auto supp = detail::support_of(r);
    const auto sub = restrict_vertices(q, supp);
    std::vector<int> rs(supp.size(), 1);
    std::vector<long> ls;
    for (int v : supp)
        ls.push_back(lambda[static_cast<std::size_t>(v)]);

    GenericFiberReport rep;
    rep.fiber_count = brute_moment_fiber(sub.quiver, rs, p, alpha, MomentTarget::scaled_identity(ls, rs, p, alpha), guard);
    rep.group_order = group_order_gl(rs, alpha).eval(Rational(p));
    rep.lhs = Rational(Integer(static_cast<unsigned long>(rep.fiber_count))) / rep.group_order;
    rep.kac = kac_polynomial(q, r, alpha);
    const long ee = euler_form(q, detail::to_long(r), detail::to_long(r));
    rep.rhs = rational_pow(Rational(p), -static_cast<long>(alpha) * ee) * rep.kac.eval(Rational(p)) /
              one_minus_q_inv().eval(Rational(p));
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

/// q^{-alpha(2|Q_1| - |Q_0| + 1)} #mu^{-1}(0) in rank 1 at q = p.
inline Rational normalized_zero_fiber(const Quiver& q, int p, int alpha, std::uint64_t guard = kDefaultGuard)
{
    const std::vector<int> r(static_cast<std::size_t>(q.nvertices()), 1);
    const std::uint64_t n = brute_moment_fiber(q, r, p, alpha, MomentTarget::zero(r, p, alpha), guard);
    const long d = static_cast<long>(alpha) * (2L * q.narrows() - q.nvertices() + 1);
    return Rational(Integer(static_cast<unsigned long>(n))) * rational_pow(Rational(p), -d);
}

/// Laurent series in z^{-1}: coefficients known for every exponent >= floor.
class InfSeries {
public:
    InfSeries() = default;
    explicit InfSeries(int floor) : floor_(floor) {}

    static InfSeries from_laurent(const LaurentPoly& p, int floor)
    {
        InfSeries s(floor);
        for (const auto& [e, c] : p.terms())
            if (e >= floor)
                s.terms_[e] = c;
        return s;
    }

    // sum_{k>=1} z^{-k}, the series of 1/(z-1) at infinity
    static InfSeries bgm(int floor)
    {
        InfSeries s(floor);
        for (int k = 1; -k >= floor; ++k)
            s.terms_[-k] = 1;
        return s;
    }

    // Expansion of f at z = infinity by long division in descending powers.
    static InfSeries expand(const RatFunc& f, int floor)
    {
        InfSeries s(floor);
        if (f.is_zero())
            return s;
        const LaurentPoly& den = f.den();
        const int dd = den.degree();
        const Rational lead = den.leading_coeff();
        LaurentPoly rem = f.num();
        for (int e = rem.degree() - dd; e >= floor; --e) {
            const Rational c = rem.coeff(e + dd) / lead;
            if (c == 0)
                continue;
            s.terms_[e] = c;
            rem -= den.shifted(e) * c;
        }
        return s;
    }

    int floor() const { return floor_; }
    int top() const { return terms_.empty() ? INT_MIN : terms_.rbegin()->first; }
    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int e) const
    {
        if (e < floor_)
            throw std::out_of_range("coefficient below the known precision");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    InfSeries shifted(int s) const
    {
        InfSeries r(floor_ + s);
        for (const auto& [e, c] : terms_)
            r.terms_[e + s] = c;
        return r;
    }

    friend InfSeries operator+(const InfSeries& a, const InfSeries& b)
    {
        InfSeries r(std::max(a.floor_, b.floor_));
        for (const auto* s : {&a, &b})
            for (const auto& [e, c] : s->terms_)
                if (e >= r.floor_) {
                    r.terms_[e] += c;
                    if (r.terms_[e] == 0)
                        r.terms_.erase(e);
                }
        return r;
    }

    // Known down to min over the two ways a lower-order unknown can enter.
    friend InfSeries operator*(const InfSeries& a, const InfSeries& b)
    {
        if (a.terms_.empty() || b.terms_.empty())
            return InfSeries(std::max(a.floor_ + std::max(b.top(), b.floor_), b.floor_ + std::max(a.top(), a.floor_)));
        InfSeries r(std::max(a.floor_ + b.top(), b.floor_ + a.top()));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                if (ea + eb < r.floor_)
                    continue;
                r.terms_[ea + eb] += ca * cb;
            }
        for (auto it = r.terms_.begin(); it != r.terms_.end();)
            it = it->second == 0 ? r.terms_.erase(it) : std::next(it);
        return r;
    }

private:
    int floor_ = 0;
    std::map<int, Rational> terms_;
};

enum class FiberMode { zero, generic };

struct ESeriesReport {
    FiberMode mode = FiberMode::zero;
    int euler = 0;             // <r,r> for r = (1,...,1)
    LaurentPoly point_count;   // P_X(q)
    LaurentPoly group_order;   // P_G(q)
    bool point_count_polynomial = false;
    std::vector<std::pair<int, std::pair<std::uint64_t, bool>>> brute;  // (p, (count, matches))
    InfSeries lhs;
    InfSeries rhs;
    int order = 0;
    bool equal = false;
};

namespace detail {

inline int next_prime_above(long w)
{
    int p = static_cast<int>(std::max(2L, w + 1));
    while (!is_prime(p))
        ++p;
    return p;
}

} // namespace detail

/// E-series bookkeeping in toric rank r = (1,...,1), with z standing for L = xy.
/// lhs: P_X(z)/P_G(z) expanded at infinity; rhs: the product form
///   zero fibre:    z^{-alpha<r,r>} sum_{partitions} prod_j A_{Q|I_j}(z) z E(BG_m)
///   generic fibre: A(z) z^{1-alpha<r,r>} E(BG_m)
/// compared for exponents >= -order.
inline ESeriesReport stack_e_series(const Quiver& q, int alpha, FiberMode mode, int order,
                                    std::uint64_t guard = kDefaultGuard, const std::vector<int>& primes = {2, 3})
{
    if (order < 1)
        throw std::invalid_argument("truncation order must be >= 1");
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
    const int n = q.nvertices();
    if (n < 1)
        throw std::invalid_argument("quiver has no vertices");
    const std::vector<int> r(static_cast<std::size_t>(n), 1);
    ESeriesReport rep;
    rep.mode = mode;
    rep.order = order;
    rep.euler = static_cast<int>(euler_form(q, detail::to_long(r), detail::to_long(r)));
    rep.group_order = group_order_gl(r, alpha);
    const int shift = -alpha * rep.euler;

    // P_X / P_G as a rational function in q
    RatFunc ratio;
    if (mode == FiberMode::zero) {
        PlethSeries f(Exponent(static_cast<std::size_t>(n), 1));
        std::vector<int> s(static_cast<std::size_t>(n), 0);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            for (int i = 0; i < n; ++i)
                s[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
            f.add_term(Exponent(s.begin(), s.end()), RatFunc(kac_polynomial(q, s, alpha)) / one_minus_q_inv());
        }
        ratio = RatFunc(LaurentPoly::q(shift)) * pleth_exp(f).coeff(Exponent(r.begin(), r.end()));
    } else {
        ratio = RatFunc(LaurentPoly::q(shift)) * RatFunc(kac_polynomial(q, r, alpha)) / one_minus_q_inv();
    }
    const RatFunc px = ratio * RatFunc(rep.group_order);
    rep.point_count_polynomial = px.is_laurent_poly() && px.num().is_polynomial() && px.num().has_integer_coeffs();
    if (rep.point_count_polynomial)
        rep.point_count = px.num();

    // brute-force spot checks of P_X at small primes, skipped beyond the guard
    std::vector<long> lambda(static_cast<std::size_t>(n), 1);
    lambda.back() = -(n - 1);
    long weight = 0;
    for (long l : lambda)
        weight += std::labs(l);
    for (int p : primes) {
        if (mode == FiberMode::generic && p <= weight)
            p = detail::next_prime_above(weight);
        if (std::any_of(rep.brute.begin(), rep.brute.end(), [p](const auto& b) { return b.first == p; }))
            continue;
        const MomentTarget target = mode == FiberMode::zero ? MomentTarget::zero(r, p, alpha)
                                                            : MomentTarget::scaled_identity(lambda, r, p, alpha);
        try {
            const std::uint64_t cnt = brute_moment_fiber(q, r, p, alpha, target, guard);
            const bool ok = rep.point_count_polynomial && rep.point_count.eval(Rational(p)) == Rational(Integer(static_cast<unsigned long>(cnt)));
            rep.brute.push_back({p, {cnt, ok}});
        } catch (const GuardExceeded&) {
        }
    }

    rep.lhs = InfSeries::expand(ratio, -order);

    const int floor = -order - 4 * alpha * (q.narrows() + n) - 8;
    InfSeries rhs(-order);
    if (mode == FiberMode::zero) {
        bool first = true;
        for_each_set_partition(n, [&](const std::vector<std::vector<int>>& blocks) {
            InfSeries prod = InfSeries::from_laurent(LaurentPoly(1), floor);
            for (const auto& b : blocks) {
                std::vector<int> s(static_cast<std::size_t>(n), 0);
                for (int v : b)
                    s[static_cast<std::size_t>(v)] = 1;
                const InfSeries a = InfSeries::from_laurent(kac_polynomial(q, s, alpha), floor);
                prod = prod * a.shifted(1) * InfSeries::bgm(floor);
            }
            prod = prod.shifted(shift);
            rhs = first ? prod : rhs + prod;
            first = false;
        });
    } else {
        const InfSeries a = InfSeries::from_laurent(kac_polynomial(q, r, alpha), floor);
        rhs = (a * InfSeries::bgm(floor)).shifted(1 + shift);
    }
    rep.rhs = rhs;

    rep.equal = rep.point_count_polynomial && rhs.floor() <= -order;
    for (int e = std::max(rep.lhs.top(), rhs.top()); rep.equal && e >= -order; --e)
        if (rep.lhs.coeff(e) != rhs.coeff(e))
            rep.equal = false;
    for (const auto& b : rep.brute)
        rep.equal = rep.equal && b.second.second;
    return rep;
}

} // namespace kacdepth
