#pragma once

#include <kacdepth/errors.hpp>
#include <kacdepth/finite_ring.hpp>
#include <kacdepth/laurent_poly.hpp>
#include <kacdepth/quiver.hpp>
#include <kacdepth/rat_func.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

namespace detail {

// Dense polynomial in q with checked 64-bit integer coefficients.
using IntPoly = std::vector<std::int64_t>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer polynomial coefficient overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer polynomial coefficient overflow");
    return r;
}

inline void add_into(IntPoly& acc, const IntPoly& x)
{
    if (acc.size() < x.size())
        acc.resize(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        acc[i] = checked_add(acc[i], x[i]);
}

inline IntPoly shift_up(const IntPoly& x, int s)
{
    IntPoly r(static_cast<std::size_t>(s), 0);
    r.insert(r.end(), x.begin(), x.end());
    return r;
}

inline IntPoly int_mul(const IntPoly& a, const IntPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
    }
    return r;
}

// (q - 1)^b
inline IntPoly q_minus_one_pow(int b)
{
    IntPoly r{1};
    for (int i = 0; i < b; ++i)
        r = int_mul(r, IntPoly{-1, 1});
    return r;
}

inline LaurentPoly to_laurent(const IntPoly& x)
{
    LaurentPoly r;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            r.add_term(static_cast<int>(i), Rational(Integer(static_cast<long>(x[i]))));
    return r;
}

inline void check_arrow_budget(const Quiver& q, int limit)
{
    if (q.narrows() > limit)
        throw GuardExceeded("subset enumeration too large: " + std::to_string(q.narrows()) + " arrows");
}

} // namespace detail

/// Toric Kac polynomial from the chain formula over E_1 ⊆ ... ⊆ E_alpha ⊆ Q_1.
/// Evaluated by iterated subset sums: g_1(E) = q^{b(E)},
/// g_{k+1}(E) = q^{b(E)} * sum_{E' ⊆ E} g_k(E'), and the last step weights
/// connected E by (q-1)^{b(E)}.
inline LaurentPoly wyss_kac(const Quiver& q, int alpha)
{
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
    detail::check_arrow_budget(q, 20);
    const int m = q.narrows();
    const std::size_t n = std::size_t{1} << m;
    std::vector<int> b(n);
    std::vector<bool> connected(n);
    for (std::size_t e = 0; e < n; ++e) {
        b[e] = betti(q, e);
        connected[e] = component_count(q, e) == 1;
    }

    // h(E) = sum over chains E_1 ⊆ ... ⊆ E_{alpha-1} ⊆ E of q^{sum b(E_k)}
    std::vector<detail::IntPoly> h(n, detail::IntPoly{1});
    for (int step = 1; step < alpha; ++step) {
        std::vector<detail::IntPoly> g(n);
        for (std::size_t e = 0; e < n; ++e)
            g[e] = detail::shift_up(h[e], b[e]);
        // zeta transform over subsets
        for (int bit = 0; bit < m; ++bit)
            for (std::size_t e = 0; e < n; ++e)
                if (e & (std::size_t{1} << bit))
                    detail::add_into(g[e], g[e ^ (std::size_t{1} << bit)]);
        h = std::move(g);
    }

    detail::IntPoly total;
    for (std::size_t e = 0; e < n; ++e)
        if (connected[e])
            detail::add_into(total, detail::int_mul(detail::q_minus_one_pow(b[e]), h[e]));
    return detail::to_laurent(total);
}

/// One stratum of the valued-spanning-tree decomposition.
struct Stratum {
    ValuedTree tree;
    int n_T = 0;
};

/// Precomputed per-tree data shared by every valuation labelling.
struct TreeFrame {
    std::vector<int> arrows;                   // sorted tree arrows
    std::vector<int> outside;                  // non-loop arrows not in the tree
    std::vector<std::vector<int>> path_slots;  // per outside arrow: positions into `arrows`
};

inline std::vector<TreeFrame> tree_frames(const Quiver& q)
{
    std::vector<TreeFrame> frames;
    for (auto& t : spanning_trees(q)) {
        TreeFrame f;
        f.arrows = t;
        for (int a = 0; a < q.narrows(); ++a) {
            if (q.arrow(a).is_loop() || std::binary_search(t.begin(), t.end(), a))
                continue;
            f.outside.push_back(a);
            std::vector<int> slots;
            for (int b : tree_path(q, t, a))
                slots.push_back(static_cast<int>(std::lower_bound(t.begin(), t.end(), b) - t.begin()));
            f.path_slots.push_back(std::move(slots));
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

/// Exponent n_T for a labelled tree. Loops contribute alpha each.
inline int stratum_exponent(const Quiver& q, const TreeFrame& f, const std::vector<int>& val, int alpha)
{
    int n = alpha * q.nloops();
    for (std::size_t k = 0; k < f.outside.size(); ++k) {
        int vmax = -1;
        int crit = -1;
        for (int s : f.path_slots[k]) {  // slots ascend with arrow index
            if (val[static_cast<std::size_t>(s)] > vmax) {
                vmax = val[static_cast<std::size_t>(s)];
                crit = f.arrows[static_cast<std::size_t>(s)];
            }
        }
        n += alpha - vmax - (f.outside[k] > crit ? 1 : 0);
    }
    return n;
}

/// Visit every valued spanning tree (labels in [0, alpha-1]) with its exponent n_T.
inline void for_each_stratum(const Quiver& q, int alpha, const std::function<void(const Stratum&)>& visit)
{
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
    if (!is_connected(q))
        throw std::invalid_argument("toric indecomposables require connected quiver");
    for (const auto& f : tree_frames(q)) {
        std::vector<int> val(f.arrows.size(), 0);
        while (true) {
            Stratum s;
            s.tree.arrows = f.arrows;
            s.tree.valuation = val;
            s.n_T = stratum_exponent(q, f, val, alpha);
            visit(s);
            std::size_t k = 0;
            for (; k < val.size(); ++k) {
                if (++val[k] < alpha)
                    break;
                val[k] = 0;
            }
            if (k == val.size())
                break;
        }
    }
}

/// Toric Kac polynomial as sum_T q^{n_T} over valued spanning trees.
inline LaurentPoly cd_kac(const Quiver& q, int alpha)
{
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
    if (!is_connected(q))
        throw std::invalid_argument("toric indecomposables require connected quiver");
    std::vector<std::uint64_t> count;
    for (const auto& f : tree_frames(q)) {
        std::vector<int> val(f.arrows.size(), 0);
        while (true) {
            const int n = stratum_exponent(q, f, val, alpha);
            if (n < 0)
                throw MathMismatch("negative stratum exponent");
            if (count.size() <= static_cast<std::size_t>(n))
                count.resize(static_cast<std::size_t>(n) + 1, 0);
            ++count[static_cast<std::size_t>(n)];
            std::size_t k = 0;
            for (; k < val.size(); ++k) {
                if (++val[k] < alpha)
                    break;
                val[k] = 0;
            }
            if (k == val.size())
                break;
        }
    }
    LaurentPoly r;
    for (std::size_t e = 0; e < count.size(); ++e)
        if (count[e])
            r.add_term(static_cast<int>(e), Rational(Integer(static_cast<unsigned long>(count[e]))));
    return r;
}

/// Stratum census: every (tree, valuation, n_T).
inline std::vector<Stratum> stratum_census(const Quiver& q, int alpha)
{
    std::vector<Stratum> out;
    for_each_stratum(q, alpha, [&](const Stratum& s) { out.push_back(s); });
    return out;
}

/// Run the contraction-deletion algorithm on x and return the valued tree T_x.
inline ValuedTree cd_simulate(const Quiver& q, const std::vector<OElem>& x)
{
    if (x.size() != static_cast<std::size_t>(q.narrows()))
        throw std::invalid_argument("representation must assign one value per arrow");
    if (q.narrows() == 0 && q.nvertices() != 1)
        throw std::invalid_argument("decomposable representation");
    std::uint64_t support = 0;
    for (std::size_t a = 0; a < x.size(); ++a)
        if (!x[a].is_zero())
            support |= std::uint64_t{1} << a;
    if (component_count(q, support) != 1)
        throw std::invalid_argument("decomposable representation");

    Quiver cur = q;
    std::vector<int> orig(static_cast<std::size_t>(q.narrows()));
    for (int a = 0; a < q.narrows(); ++a)
        orig[static_cast<std::size_t>(a)] = a;
    std::vector<OElem> val = x;
    int drop = 0;
    std::vector<std::pair<int, int>> contracted;

    while (cur.narrows() > 0) {
        int pick = -1;
        for (int a = cur.narrows() - 1; a >= 0; --a) {
            if (!cur.arrow(a).is_loop() && val[static_cast<std::size_t>(a)].is_unit()) {
                pick = a;
                break;
            }
        }
        if (pick >= 0) {
            contracted.emplace_back(orig[static_cast<std::size_t>(pick)], drop);
            Contraction c = contract_arrow(cur, pick);
            std::vector<int> o2;
            std::vector<OElem> v2;
            for (int a = 0; a < cur.narrows(); ++a) {
                if (a == pick)
                    continue;
                o2.push_back(orig[static_cast<std::size_t>(a)]);
                v2.push_back(val[static_cast<std::size_t>(a)]);
            }
            cur = c.quiver;
            orig = std::move(o2);
            val = std::move(v2);
            continue;
        }
        int loop = -1;
        for (int a = cur.narrows() - 1; a >= 0; --a) {
            if (cur.arrow(a).is_loop()) {
                loop = a;
                break;
            }
        }
        if (loop >= 0) {
            cur = delete_arrow(cur, loop);
            orig.erase(orig.begin() + loop);
            val.erase(val.begin() + loop);
            continue;
        }
        if (val.front().alpha() <= 1)
            throw std::invalid_argument("decomposable representation");
        for (auto& v : val)
            v = v.divide_by_t();
        ++drop;
    }
    if (cur.nvertices() != 1)
        throw std::invalid_argument("decomposable representation");

    std::sort(contracted.begin(), contracted.end());
    ValuedTree t;
    for (auto [a, v] : contracted) {
        t.arrows.push_back(a);
        t.valuation.push_back(v);
    }
    return t;
}

/// Whether x satisfies the defining inequalities of the stratum of T:
/// val(x_a) = v(a) on T, val(x_a) >= v_{T_a} + [a > e_{T_a}] off T (non-loops).
inline bool satisfies_stratum(const Quiver& q, const ValuedTree& t, const std::vector<OElem>& x)
{
    for (int a = 0; a < q.narrows(); ++a) {
        const int v = x[static_cast<std::size_t>(a)].valuation();
        if (t.contains(a)) {
            if (v != t.valuation_of(a))
                return false;
            continue;
        }
        if (q.arrow(a).is_loop())
            continue;
        const TreePathData d = tree_path_data(q, t, a);
        if (v < d.max_valuation + (a > d.critical_arrow ? 1 : 0))
            return false;
    }
    return true;
}

/// Orbits of the vertex torus on representations with connected support, by
/// exhaustive scan: each unvisited point starts a new orbit, whose members are
/// then marked.
inline std::uint64_t brute_toric_A(const Quiver& q, int p, int alpha, std::uint64_t guard = kDefaultGuard)
{
    const RingTables ring(p, alpha);
    const int m = q.narrows();
    const std::uint64_t N = static_cast<std::uint64_t>(ring.size());
    const std::uint64_t total = checked_power(N, static_cast<std::uint64_t>(m));
    check_guard(total, guard);

    std::vector<int> units, inv(static_cast<std::size_t>(ring.size()), -1);
    for (int u = 0; u < ring.size(); ++u) {
        if (!ring.is_unit(u))
            continue;
        units.push_back(u);
        inv[static_cast<std::size_t>(u)] = ring.encode(ring.decode(u).inverse());
    }
    const int n = q.nvertices();
    const std::uint64_t torus = checked_power(units.size(), static_cast<std::uint64_t>(n));
    check_guard(torus, guard);

    std::vector<bool> seen(total, false);
    std::vector<int> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
    std::vector<int> u(static_cast<std::size_t>(n));
    std::uint64_t orbits = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (seen[idx])
            continue;
        std::uint64_t r = idx;
        std::uint64_t support = 0;
        for (int a = 0; a < m; ++a) {
            x[static_cast<std::size_t>(a)] = static_cast<int>(r % N);
            r /= N;
            if (x[static_cast<std::size_t>(a)])
                support |= std::uint64_t{1} << a;
        }
        if (component_count(q, support) != 1) {
            seen[idx] = true;
            continue;
        }
        ++orbits;
        for (std::uint64_t g = 0; g < torus; ++g) {
            std::uint64_t gg = g;
            for (int v = 0; v < n; ++v) {
                u[static_cast<std::size_t>(v)] = units[gg % units.size()];
                gg /= units.size();
            }
            std::uint64_t code = 0;
            for (int a = m - 1; a >= 0; --a) {
                const Arrow& ar = q.arrow(a);
                const int val = ring.mul(ring.mul(u[static_cast<std::size_t>(ar.target)], x[static_cast<std::size_t>(a)]),
                                         inv[static_cast<std::size_t>(u[static_cast<std::size_t>(ar.source)])]);
                code = code * N + static_cast<std::uint64_t>(val);
            }
            seen[code] = true;
        }
    }
    return orbits;
}

namespace detail {

inline void require_two_connected(const Quiver& q)
{
    if (!is_two_connected(q))
        throw std::invalid_argument("limit does not converge");
}

} // namespace detail

/// lim_alpha q^{-alpha b(Q)} A_{Q,1,alpha} for 2-connected Q, as a chain sum over
/// E_1 ⊊ ... ⊊ E_s = Q_1 (E_1 may be empty).
inline RatFunc asymptotic_A(const Quiver& q)
{
    detail::require_two_connected(q);
    detail::check_arrow_budget(q, 16);
    const int m = q.narrows();
    const std::size_t full = (std::size_t{1} << m) - 1;
    const int b = betti(q);
    // h(E): chains ending at the proper subset E, weighted by prod 1/(q^{b-b(E_j)} - 1)
    std::vector<RatFunc> h(full);
    RatFunc total(1);
    for (std::size_t e = 0; e < full; ++e) {
        RatFunc inner(1);
        for (std::size_t s = (e - 1) & e; s != e; s = (s - 1) & e) {
            inner += h[s];
            if (s == 0)
                break;
        }
        const int gap = b - betti(q, e);
        h[e] = inner / RatFunc(LaurentPoly::q(gap) - LaurentPoly(1));
        total += h[e];
    }
    return one_minus_q_inv().pow(b) * total;
}

/// (1 - q^{-1})^{|Q_0| - 1} A_Q.
inline RatFunc asymptotic_B(const Quiver& q)
{
    return one_minus_q_inv().pow(q.nvertices() - 1) * asymptotic_A(q);
}

} // namespace kacdepth
