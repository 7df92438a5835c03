#pragma once

#include <kacdepth/errors.hpp>
#include <kacdepth/kac_toric.hpp>
#include <kacdepth/laurent_poly.hpp>
#include <kacdepth/quiver.hpp>
#include <kacdepth/rat_func.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

/// Order complex of the proper nonempty subsets of an m-element arrow set.
/// A vertex is an arrow mask; a facet is a maximal chain, stored as its
/// m-1 nested prefixes of an insertion word.
struct OrderComplex {
    int m = 0;
    std::vector<std::vector<int>> words;             // insertion word per facet
    std::vector<std::vector<std::uint64_t>> facets;  // sorted vertex masks per facet

    std::size_t facet_count() const { return facets.size(); }
    int dimension() const { return m - 2; }  // -1 for the complex {∅}
};

/// Facets in lexicographic order of their insertion words.
inline OrderComplex build_order_complex(int m)
{
    if (m < 0)
        throw std::invalid_argument("negative arrow count");
    if (m > 10)
        throw GuardExceeded("order complex too large: " + std::to_string(m) + " arrows");
    OrderComplex c;
    c.m = m;
    std::vector<int> word(static_cast<std::size_t>(m));
    std::iota(word.begin(), word.end(), 0);
    if (m <= 1) {
        c.words.push_back(word);
        c.facets.emplace_back();
        return c;
    }
    do {
        std::vector<std::uint64_t> f;
        std::uint64_t mask = 0;
        for (int k = 0; k + 1 < m; ++k) {
            mask |= std::uint64_t{1} << word[static_cast<std::size_t>(k)];
            f.push_back(mask);
        }
        std::sort(f.begin(), f.end());
        c.words.push_back(word);
        c.facets.push_back(std::move(f));
    } while (std::next_permutation(word.begin(), word.end()));
    return c;
}

inline OrderComplex build_order_complex(const Quiver& q)
{
    return build_order_complex(q.narrows());
}

/// Number of faces (chains of proper nonempty subsets, the empty chain included).
inline std::uint64_t face_count(int m)
{
    if (m <= 1)
        return 1;
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    // chains(E) = number of chains whose top element is E
    std::vector<std::uint64_t> top(full, 0);
    std::uint64_t total = 1;
    for (std::uint64_t e = 1; e < full; ++e) {
        std::uint64_t c = 1;
        for (std::uint64_t s = (e - 1) & e; s; s = (s - 1) & e)
            c += top[s];
        top[e] = c;
        total += c;
    }
    return total;
}

namespace detail {

// Exponent of u_E = q^{-(b(Q) - b(Q|_E))}, for every arrow mask.
inline std::vector<int> specialization_gaps(const Quiver& q)
{
    if (!is_two_connected(q))
        throw std::invalid_argument("specialization not convergent");
    check_arrow_budget(q, 8);
    const std::size_t n = std::size_t{1} << q.narrows();
    const int b = betti(q);
    std::vector<int> gap(n);
    for (std::size_t e = 0; e < n; ++e)
        gap[e] = b - betti(q, e);
    return gap;
}

// u^k/(1-u^k) with u = q^{-1}, i.e. 1/(q^k - 1).
inline RatFunc face_factor(int k)
{
    return RatFunc(1) / RatFunc(LaurentPoly::q(k) - LaurentPoly(1));
}

// 1/(1 - q^{-k})
inline RatFunc inverse_one_minus(int k)
{
    return RatFunc(1) / RatFunc(LaurentPoly(1) - LaurentPoly::q(-k));
}

} // namespace detail

/// Sum over all faces F of prod_{E in F} u_E/(1-u_E) at u_E = q^{-(b(Q)-b(Q|_E))}.
/// Faces are enumerated literally and grouped by their exponent multiset.
inline RatFunc hilbert_specialized(const Quiver& q)
{
    const std::vector<int> gap = detail::specialization_gaps(q);
    const int m = q.narrows();
    if (m <= 1)
        return RatFunc(1);
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    std::map<std::vector<int>, std::uint64_t> groups;
    std::vector<int> exps;
    auto dfs = [&](auto&& self, std::uint64_t below) -> void {
        std::vector<int> key = exps;
        std::sort(key.begin(), key.end());
        ++groups[key];
        // next element strictly contains `below` and is proper
        for (std::uint64_t e = below + 1; e < full; ++e) {
            if ((e & below) != below || e == below)
                continue;
            exps.push_back(gap[e]);
            self(self, e);
            exps.pop_back();
        }
    };
    dfs(dfs, 0);
    RatFunc total;
    for (const auto& [key, count] : groups) {
        RatFunc term(Rational(Integer(static_cast<unsigned long>(count))));
        for (int k : key)
            term *= detail::face_factor(k);
        total += term;
    }
    return total;
}

struct Thm41Report {
    RatFunc asymptotic;  // A_Q from the chain sum
    RatFunc hilbert;     // the specialized Hilbert series
    RatFunc product;     // (1-q^{-1})^b/(1-q^{-b}) * hilbert
    bool equal = false;
};

inline Thm41Report verify_thm41(const Quiver& q)
{
    Thm41Report r;
    r.hilbert = hilbert_specialized(q);
    r.asymptotic = asymptotic_A(q);
    const int b = betti(q);
    r.product = one_minus_q_inv().pow(b) * detail::inverse_one_minus(b) * r.hilbert;
    r.equal = r.product == r.asymptotic;
    return r;
}

struct ShellingOrder {
    OrderComplex complex;
    std::vector<std::vector<std::uint64_t>> restriction;  // R(F_i) per facet, sorted
};

namespace detail {

inline std::vector<std::uint64_t> intersect(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    std::vector<std::uint64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace detail

/// Check the shelling condition literally: for i and j < i there is k < i with
/// |F_i ∩ F_k| = |F_i| - 1 and F_i ∩ F_j ⊆ F_i ∩ F_k.
inline bool is_shelling(const std::vector<std::vector<std::uint64_t>>& facets)
{
    for (std::size_t i = 1; i < facets.size(); ++i) {
        const auto& fi = facets[i];
        std::vector<std::vector<std::uint64_t>> ridges;
        for (std::size_t k = 0; k < i; ++k) {
            auto x = detail::intersect(fi, facets[k]);
            if (x.size() + 1 == fi.size())
                ridges.push_back(std::move(x));
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto x = detail::intersect(fi, facets[j]);
            bool covered = false;
            for (const auto& r : ridges)
                if (detail::is_subset(x, r)) {
                    covered = true;
                    break;
                }
            if (!covered)
                return false;
        }
    }
    return true;
}

/// Lexicographic shelling of the facets with restriction faces
/// R(F_i) = {x in F_i : F_i \ {x} lies in an earlier facet}.
inline ShellingOrder lex_shelling(const OrderComplex& c)
{
    if (c.m < 2)
        throw std::invalid_argument("shelling requires at least two arrows");
    if (!is_shelling(c.facets))
        throw MathMismatch("order is not a shelling");
    ShellingOrder s;
    s.complex = c;
    s.restriction.resize(c.facets.size());
    for (std::size_t i = 1; i < c.facets.size(); ++i) {
        const auto& fi = c.facets[i];
        for (std::size_t x = 0; x < fi.size(); ++x) {
            std::vector<std::uint64_t> rest = fi;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(x));
            for (std::size_t k = 0; k < i; ++k) {
                if (detail::is_subset(rest, c.facets[k])) {
                    s.restriction[i].push_back(fi[x]);
                    break;
                }
            }
        }
    }
    return s;
}

struct CertificateTerm {
    std::vector<int> restriction_exponents;  // u-exponents of R(F_i)
    std::vector<int> facet_exponents;        // u-exponents of F_i
};

/// Positivity certificate: shelling terms u^{R}/prod(1-u) with u = q^{-1}, and
/// the same sum over the single denominator (1-u^L)^{|Q_1|-1}.
struct PositivityCertificate {
    std::vector<CertificateTerm> terms;
    RatFunc total;             // sum of the shelling terms
    RatFunc hilbert;           // direct face sum
    int lcm = 1;               // L
    int denominator_power = 0; // |Q_1| - 1
    std::vector<Integer> numerator;  // coefficients of u^k over (1-u^L)^{denominator_power}
    RatFunc single_denominator_total;
    bool terms_match = false;
    bool single_denominator_match = false;
    bool numerator_nonnegative = false;
};

inline PositivityCertificate positivity_certificate(const Quiver& q)
{
    const std::vector<int> gap = detail::specialization_gaps(q);
    PositivityCertificate cert;
    cert.hilbert = hilbert_specialized(q);
    if (q.narrows() < 2) {
        cert.terms.push_back({});
        cert.total = RatFunc(1);
        cert.numerator = {Integer(1)};
        cert.single_denominator_total = RatFunc(1);
        cert.terms_match = cert.single_denominator_match = cert.total == cert.hilbert;
        cert.numerator_nonnegative = true;
        return cert;
    }
    const ShellingOrder s = lex_shelling(build_order_complex(q));
    for (std::size_t i = 0; i < s.complex.facets.size(); ++i) {
        CertificateTerm t;
        for (auto e : s.restriction[i])
            t.restriction_exponents.push_back(gap[e]);
        for (auto e : s.complex.facets[i])
            t.facet_exponents.push_back(gap[e]);
        cert.terms.push_back(std::move(t));
    }
    for (const auto& t : cert.terms) {
        RatFunc term(LaurentPoly::q(-std::accumulate(t.restriction_exponents.begin(), t.restriction_exponents.end(), 0)));
        for (int k : t.facet_exponents)
            term *= detail::inverse_one_minus(k);
        cert.total += term;
        for (int k : t.facet_exponents)
            cert.lcm = std::lcm(cert.lcm, k);
    }
    cert.terms_match = cert.total == cert.hilbert;

    // u^R prod_x (1 + u^{k_x} + ... + u^{L - k_x}) over (1 - u^L)^{|F|}
    const int L = cert.lcm;
    cert.denominator_power = q.narrows() - 1;
    std::vector<Integer> num;
    for (const auto& t : cert.terms) {
        std::vector<Integer> poly{Integer(1)};
        for (int k : t.facet_exponents) {
            std::vector<Integer> next(poly.size() + static_cast<std::size_t>(L - k), Integer(0));
            for (std::size_t i = 0; i < poly.size(); ++i)
                for (int j = 0; j <= L - k; j += k)
                    next[i + static_cast<std::size_t>(j)] += poly[i];
            poly = std::move(next);
        }
        const std::size_t shift = static_cast<std::size_t>(
            std::accumulate(t.restriction_exponents.begin(), t.restriction_exponents.end(), 0));
        if (num.size() < poly.size() + shift)
            num.resize(poly.size() + shift, Integer(0));
        for (std::size_t i = 0; i < poly.size(); ++i)
            num[i + shift] += poly[i];
    }
    cert.numerator = num;
    cert.numerator_nonnegative = std::all_of(num.begin(), num.end(), [](const Integer& c) { return c >= 0; });
    LaurentPoly n;
    for (std::size_t k = 0; k < num.size(); ++k)
        if (num[k] != 0)
            n.add_term(-static_cast<int>(k), Rational(num[k]));
    const LaurentPoly d = (LaurentPoly(1) - LaurentPoly::q(-L)).pow(static_cast<unsigned>(cert.denominator_power));
    cert.single_denominator_total = RatFunc::make(n, d);
    cert.single_denominator_match = cert.single_denominator_total == cert.hilbert;
    return cert;
}

} // namespace kacdepth
