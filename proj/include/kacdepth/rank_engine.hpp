#pragma once

#include <kacdepth/errors.hpp>
#include <kacdepth/laurent_poly.hpp>
#include <kacdepth/plethysm.hpp>
#include <kacdepth/rat_func.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

// Higher-rank counts for the one-vertex quiver with g loops.

using RatMatrix = std::vector<std::vector<RatFunc>>;

struct TypeVector {
    std::vector<std::string> labels;
    std::vector<RatFunc> values;

    RatFunc sum() const
    {
        RatFunc s;
        for (const auto& v : values)
            s += v;
        return s;
    }
};

namespace detail {

inline RatFunc qq(int e) { return RatFunc(LaurentPoly::q(e)); }
inline RatFunc frac(long n, long d) { return RatFunc(make_rational(n, d)); }
// q^e - 1
inline RatFunc qm1(int e) { return RatFunc(LaurentPoly::q(e) - LaurentPoly(1)); }
// q^e + 1
inline RatFunc qp1(int e) { return RatFunc(LaurentPoly::q(e) + LaurentPoly(1)); }
inline RatFunc qpoly(std::initializer_list<long> coeffs_low_to_high)
{
    LaurentPoly p;
    int e = 0;
    for (long c : coeffs_low_to_high)
        p.add_term(e++, Rational(c));
    return RatFunc(p);
}

inline RatMatrix zero_matrix(std::size_t n)
{
    return RatMatrix(n, std::vector<RatFunc>(n));
}

inline std::vector<RatFunc> apply(const RatMatrix& m, const std::vector<RatFunc>& v)
{
    std::vector<RatFunc> out(v.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!m[i][j].is_zero() && !v[j].is_zero())
                out[i] += m[i][j] * v[j];
    return out;
}

inline void require_loops(int g)
{
    if (g < 1)
        throw std::invalid_argument("loop count g must be >= 1");
}

inline void require_depth(int alpha)
{
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
}

} // namespace detail

inline const std::vector<std::string>& rank2_labels()
{
    static const std::vector<std::string> l{"I", "II1", "II2", "II3"};
    return l;
}

inline const std::vector<std::string>& rank3_labels()
{
    static const std::vector<std::string> l{"G", "L", "J", "T1", "T2", "T3", "M", "N", "K0", "Kinf"};
    return l;
}

/// Rank-2 transition matrix (rows sigma, columns tau).
inline RatMatrix rank2_matrix(int g)
{
    using namespace detail;
    const RatFunc q2m1 = qm1(2);
    RatMatrix m = zero_matrix(4);
    m[0][0] = qq(4 * g - 3);
    m[1][0] = frac(1, 2) * qq(2 * g - 2) * q2m1;
    m[1][1] = qq(2 * g);
    m[2][0] = qq(2 * g - 3) * q2m1;
    m[2][2] = qq(2 * g);
    m[3][0] = frac(1, 2) * qq(2 * g - 2) * qm1(1).pow(2);
    m[3][3] = qq(2 * g);
    return m;
}

/// Rank-2 initial vector at alpha = 1, as published.
inline std::vector<RatFunc> rank2_initial_printed(int g)
{
    using namespace detail;
    return {qq(4 * g) / (qq(1) * qm1(1) * qp1(1)),
            qq(2) * qpoly({-2, 1}) / (frac(2, 1) * qm1(1)),
            qq(2 * g - 1),
            qq(2 * g + 1) / (frac(2, 1) * qp1(1))};
}

/// Rank-2 initial vector used for computation. The II1 entry carries q^{2g}
/// (fixed points of a split regular semisimple class), which the printed
/// vector shows as q^2.
inline std::vector<RatFunc> rank2_initial(int g)
{
    using namespace detail;
    std::vector<RatFunc> v = rank2_initial_printed(g);
    v[1] = qq(2 * g) * qpoly({-2, 1}) / (frac(2, 1) * qm1(1));
    return v;
}

/// Branching counts a (rows sigma, columns tau).
inline RatMatrix rank2_branching()
{
    using namespace detail;
    RatMatrix a = zero_matrix(4);
    const RatFunc half_qqm1 = frac(1, 2) * qq(1) * qm1(1);
    a[0][0] = qq(1);
    a[1][0] = half_qqm1;
    a[1][1] = qq(2);
    a[2][0] = qq(1);
    a[2][2] = qq(2);
    a[3][0] = half_qqm1;
    a[3][3] = qq(2);
    return a;
}

/// ||sigma|| (centraliser order modulo the first congruence kernel) per rank-2 type.
inline std::vector<RatFunc> rank2_norms()
{
    using namespace detail;
    return {qm1(2) * (qq(2) - qq(1)), qm1(1).pow(2), qq(1) * qm1(1), qm1(2)};
}

inline std::vector<int> rank2_dims()
{
    return {4, 2, 2, 2};
}

/// Rebuild the rank-2 transition matrix from q^{g dim(sigma) - dim(tau)} ||tau||/||sigma|| a.
inline RatMatrix rank2_matrix_from_branching(int g)
{
    const RatMatrix a = rank2_branching();
    const auto norm = rank2_norms();
    const auto dim = rank2_dims();
    RatMatrix m = detail::zero_matrix(4);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t)
            if (!a[s][t].is_zero())
                m[s][t] = detail::qq(g * dim[s] - dim[t]) * norm[t] / norm[s] * a[s][t];
    return m;
}

/// Rank-3 transition matrix exactly as printed.
inline RatMatrix rank3_matrix_printed(int g)
{
    using namespace detail;
    const RatFunc q2 = qm1(2), q3 = qm1(3), q1 = qm1(1);
    RatMatrix m = zero_matrix(10);
    m[0][0] = qq(9 * g - 8);
    m[1][0] = qq(5 * g - 6) * q3;
    m[1][1] = qq(5 * g - 3);
    m[2][0] = qq(5 * g - 8) * q2 * q3 / q1;
    m[2][2] = qq(5 * g - 3);
    m[3][0] = qq(3 * g - 5) * qpoly({-2, 1}) * q2 * q3 / (frac(6, 1) * q1);
    m[3][1] = qq(3 * g - 2) * q2 / frac(2, 1);
    m[3][3] = qq(3 * g);
    m[4][0] = qq(3 * g - 4) * q1 * q3 / frac(2, 1);
    m[4][1] = qq(3 * g - 2) * q1.pow(2) / frac(2, 1);
    m[4][4] = qq(3 * g);
    m[5][0] = qq(3 * g - 5) * q1 * q2.pow(2) / frac(3, 1);
    m[5][5] = qq(3 * g);
    m[6][0] = qq(3 * g - 6) * q2 * q3;
    m[6][1] = qq(3 * g - 3) * q2;
    m[6][2] = qq(3 * g - 1) * q1;
    m[6][6] = qq(3 * g);
    m[7][0] = qq(3 * g - 7) * q2 * q3;
    m[7][2] = qq(3 * g - 3) * q1.pow(2);
    m[7][7] = qq(3 * g);
    m[8][2] = qq(3 * g - 3) * q1;
    m[8][8] = qq(3 * g);
    m[9][9] = qq(3 * g);
    return m;
}

/// Rank-3 transition matrix used for computation: the printed matrix plus the
/// (K_inf, J) entry q^{3g-3}(q-1), mirroring (K_0, J).
inline RatMatrix rank3_matrix(int g)
{
    RatMatrix m = rank3_matrix_printed(g);
    m[9][2] = detail::qq(3 * g - 3) * detail::qm1(1);
    return m;
}

inline std::vector<RatFunc> rank3_initial(int g)
{
    using namespace detail;
    const RatFunc q1 = qm1(1), q2 = qm1(2), q3 = qm1(3);
    return {qq(9 * g - 3) / (q2 * q3),
            qq(5 * g - 1) * qpoly({-2, 1}) / (q1 * q2),
            qq(5 * g - 3) / q1,
            qq(3 * g) * qpoly({-2, 1}) * qpoly({-3, 1}) / (frac(6, 1) * q1.pow(2)),
            qq(3 * g + 1) / (frac(2, 1) * qp1(1)),
            qq(3 * g + 1) * q2 / (frac(3, 1) * q3),
            qq(3 * g - 1) * qpoly({-2, 1}) / q1,
            qq(3 * g - 2),
            RatFunc(),
            RatFunc()};
}

inline TypeVector iterate_types(const std::vector<std::string>& labels, const RatMatrix& m, std::vector<RatFunc> v,
                                int alpha)
{
    for (int k = 1; k < alpha; ++k)
        v = detail::apply(m, v);
    return TypeVector{labels, std::move(v)};
}

/// Burnside summands S_{sigma,alpha} in rank 2; their sum is M_{Q,2,alpha}.
inline TypeVector rank2_sums(int g, int alpha)
{
    detail::require_loops(g);
    detail::require_depth(alpha);
    return iterate_types(rank2_labels(), rank2_matrix(g), rank2_initial(g), alpha);
}

/// Burnside summands in rank 3; their sum is M_{Q,3,alpha}.
inline TypeVector rank3_sums(int g, int alpha)
{
    detail::require_loops(g);
    detail::require_depth(alpha);
    return iterate_types(rank3_labels(), rank3_matrix(g), rank3_initial(g), alpha);
}

/// A_{Q,1..rmax,alpha} from sum_r M_r t^r = Exp(sum_r A_r t^r), with M_1 = q^{alpha g}.
inline std::vector<LaurentPoly> moments_to_kac(int g, int alpha, int rmax)
{
    if (rmax < 1 || rmax > 3)
        throw std::invalid_argument("rank out of implemented range");
    detail::require_loops(g);
    detail::require_depth(alpha);
    const Exponent bound{rmax};
    PlethSeries m = TSeries::constant(bound, RatFunc(1));
    m.add_term({1}, detail::qq(alpha * g));
    if (rmax >= 2)
        m.add_term({2}, rank2_sums(g, alpha).sum());
    if (rmax >= 3)
        m.add_term({3}, rank3_sums(g, alpha).sum());
    const PlethSeries a = pleth_log(m);
    std::vector<LaurentPoly> out;
    for (int r = 1; r <= rmax; ++r) {
        const RatFunc c = a.coeff({r});
        if (!c.is_laurent_poly() || !c.num().has_integer_coeffs() || !c.num().is_polynomial())
            throw MathMismatch("polynomiality violated at rank " + std::to_string(r) + ": " + c.to_string());
        out.push_back(c.num());
    }
    return out;
}

/// Closed formula for A_{Q,2,alpha}.
inline RatFunc closed_rank2(int g, int alpha)
{
    using namespace detail;
    if (g < 0)
        throw std::invalid_argument("loop count g must be >= 0");
    require_depth(alpha);
    return qq(2 * alpha * g - 1) * qm1(2 * g) * qm1(alpha * (2 * g - 3)) / (qm1(2) * qm1(2 * g - 3));
}

namespace detail {

inline RatFunc closed_rank3_impl(int g, int alpha, bool printed)
{
    if (g < 0)
        throw std::invalid_argument("loop count g must be >= 0");
    require_depth(alpha);
    const RatFunc pre = qq(3 * alpha * g - 2) * qm1(2 * g) * qm1(2 * g - 1) /
                        (qm1(2) * qm1(3) * qm1(2 * g - 3) * qm1(6 * g - 8) * qm1(4 * g - 5));
    const RatFunc middle = printed
                               ? qq(alpha * (2 * g - 3) - 1) * qpoly({1, 1, 1}) * qm1(2 * g - 1) * qm1(6 * g - 8)
                               : -(qq(alpha * (2 * g - 3) - 1) * qpoly({1, 1, 1}) * qp1(2 * g - 1) * qm1(6 * g - 8));
    const RatFunc bracket = qq(alpha * (6 * g - 8) - 1) * qm1(6 * g - 7) * qp1(2 * g) -
                            qq(alpha * (6 * g - 8) + 2 * g - 4) * qm1(2) * qp1(4 * g - 3) + middle +
                            qpoly({1, 1}) * qm1(8 * g - 10) + qq(2 * g - 4) * qp1(4) * qm1(4 * g - 5);
    return pre * bracket;
}

} // namespace detail

/// Closed formula for A_{Q,3,alpha}, with the q^{alpha(2g-3)} term as
/// -q^{alpha(2g-3)-1}(q^2+q+1)(q^{2g-1}+1)(q^{6g-8}-1).
inline RatFunc closed_rank3(int g, int alpha)
{
    return detail::closed_rank3_impl(g, alpha, false);
}

/// The closed rank-3 formula with the middle term as published.
inline RatFunc closed_rank3_printed(int g, int alpha)
{
    return detail::closed_rank3_impl(g, alpha, true);
}

struct TableEntry {
    int g;
    int alpha;
    const char* text;
};

/// The printed A_{g,3,alpha} table.
inline const std::vector<TableEntry>& rank3_table()
{
    static const std::vector<TableEntry> t{
        {1, 1, "q"},
        {1, 2, "q^4 + q^3 + 2q^2"},
        {1, 3, "q^7 + q^6 + 3q^5 + 2q^4 + 2q^3"},
        {1, 4, "q^10 + q^9 + 3q^8 + 3q^7 + 4q^6 + 2q^5 + 2q^4"},
        {1, 5, "q^13 + q^12 + 3q^11 + 3q^10 + 5q^9 + 4q^8 + 4q^7 + 2q^6 + 2q^5"},
        {2, 1, "q^10 + q^8 + q^7 + q^6 + q^5 + q^4"},
        {2, 2, "q^20 + q^18 + 2q^17 + 3q^16 + 3q^15 + 4q^14 + 3q^13 + 3q^12 + 2q^11 + 2q^10"},
        {2, 3, "q^30 + q^28 + 2q^27 + 3q^26 + 3q^25 + 5q^24 + 5q^23 + 7q^22 + 6q^21 + 7q^20 + 5q^19 + 4q^18 + 3q^17 + "
               "2q^16"},
        {2, 4, "q^40 + q^38 + 2q^37 + 3q^36 + 3q^35 + 5q^34 + 5q^33 + 7q^32 + 7q^31 + 9q^30 + 9q^29 + 10q^28 + 9q^27 + "
               "9q^26 + 6q^25 + 5q^24 + 3q^23 + 2q^22"},
        {2, 5, "q^50 + q^48 + 2q^47 + 3q^46 + 3q^45 + 5q^44 + 5q^43 + 7q^42 + 7q^41 + 9q^40 + 9q^39 + 11q^38 + 11q^37 + "
               "13q^36 + 12q^35 + 13q^34 + 11q^33 + 10q^32 + 7q^31 + 5q^30 + 3q^29 + 2q^28"},
        {3, 1, "q^19 + q^17 + q^16 + q^15 + q^14 + 2q^13 + q^12 + 2q^11 + 2q^10 + q^9 + q^8 + q^7"},
        {3, 2, "q^38 + q^36 + q^35 + q^34 + q^33 + 2q^32 + 2q^31 + 3q^30 + 4q^29 + 4q^28 + 4q^27 + 5q^26 + 4q^25 + 4q^24 + "
               "4q^23 + 5q^22 + 3q^21 + 4q^20 + 3q^19 + 2q^18 + q^17 + q^16"},
        {3, 3, "q^57 + q^55 + q^54 + q^53 + q^52 + 2q^51 + 2q^50 + 3q^49 + 4q^48 + 4q^47 + 4q^46 + 5q^45 + 4q^44 + 5q^43 + "
               "5q^42 + 7q^41 + 6q^40 + 8q^39 + 8q^38 + 8q^37 + 7q^36 + 8q^35 + 7q^34 + 6q^33 + 6q^32 + 6q^31 + 4q^30 + "
               "4q^29 + 3q^28 + 2q^27 + q^26 + q^25"},
        {3, 4, "q^76 + q^74 + q^73 + q^72 + q^71 + 2q^70 + 2q^69 + 3q^68 + 4q^67 + 4q^66 + 4q^65 + 5q^64 + 4q^63 + 5q^62 + "
               "5q^61 + 7q^60 + 6q^59 + 8q^58 + 8q^57 + 8q^56 + 8q^55 + 9q^54 + 9q^53 + 9q^52 + 10q^51 + 11q^50 + 10q^49 + "
               "11q^48 + 11q^47 + 11q^46 + 9q^45 + 10q^44 + 8q^43 + 7q^42 + 6q^41 + 6q^40 + 4q^39 + 4q^38 + 3q^37 + "
               "2q^36 + q^35 + q^34"},
        {3, 5, "q^95 + q^93 + q^92 + q^91 + q^90 + 2q^89 + 2q^88 + 3q^87 + 4q^86 + 4q^85 + 4q^84 + 5q^83 + 4q^82 + 5q^81 + "
               "5q^80 + 7q^79 + 6q^78 + 8q^77 + 8q^76 + 8q^75 + 8q^74 + 9q^73 + 9q^72 + 9q^71 + 10q^70 + 11q^69 + 10q^68 + "
               "12q^67 + 12q^66 + 13q^65 + 12q^64 + 14q^63 + 13q^62 + 13q^61 + 13q^60 + 14q^59 + 13q^58 + 13q^57 + "
               "13q^56 + 12q^55 + 10q^54 + 10q^53 + 8q^52 + 7q^51 + 6q^50 + 6q^49 + 4q^48 + 4q^47 + 3q^46 + 2q^45 + "
               "q^44 + q^43"},
    };
    return t;
}

inline LaurentPoly rank3_table_value(int g, int alpha)
{
    for (const auto& e : rank3_table())
        if (e.g == g && e.alpha == alpha)
            return parse_laurent(e.text);
    throw std::out_of_range("no table entry for g=" + std::to_string(g) + ", alpha=" + std::to_string(alpha));
}

struct TableRow {
    int g = 0;
    int alpha = 0;
    LaurentPoly printed;
    LaurentPoly recursion;
    RatFunc closed;
    bool recursion_match = false;
    bool closed_match = false;
    bool nonnegative = false;
};

struct TableReport {
    std::vector<TableRow> rows;
    bool ok = true;
};

/// Recompute every printed A_{g,3,alpha} by recursion and by closed formula.
inline TableReport verify_tables()
{
    TableReport rep;
    for (const auto& e : rank3_table()) {
        TableRow row;
        row.g = e.g;
        row.alpha = e.alpha;
        row.printed = parse_laurent(e.text);
        row.recursion = moments_to_kac(e.g, e.alpha, 3)[2];
        row.closed = closed_rank3(e.g, e.alpha);
        row.recursion_match = row.recursion == row.printed;
        row.closed_match = row.closed == RatFunc(row.printed);
        row.nonnegative = row.recursion.has_nonnegative_coeffs();
        rep.ok = rep.ok && row.recursion_match && row.closed_match && row.nonnegative;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace kacdepth
