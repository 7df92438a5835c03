#pragma once

#include <kacdepth/errors.hpp>
#include <kacdepth/laurent_poly.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// p^e as an unsigned 64-bit count, saturating at UINT64_MAX.
inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t e)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (base != 0 && r > UINT64_MAX / base)
            return UINT64_MAX;
        r *= base;
    }
    return r;
}

inline void check_guard(std::uint64_t size, std::uint64_t guard)
{
    if (size > guard)
        throw GuardExceeded("enumeration too large: " + std::to_string(size) + " points exceed guard " + std::to_string(guard));
}

/// Element of O_alpha = F_p[t]/(t^alpha); coeffs[k] is the coefficient of t^k.
class OElem {
public:
    OElem() = default;
    OElem(int p, int alpha) : p_(p), alpha_(alpha), c_(static_cast<std::size_t>(alpha), 0) { validate(); }
    OElem(int p, int alpha, std::vector<int> coeffs) : p_(p), alpha_(alpha), c_(std::move(coeffs))
    {
        validate();
        if (c_.size() != static_cast<std::size_t>(alpha_))
            throw std::invalid_argument("OElem: coefficient count must equal alpha");
        for (auto& x : c_)
            x = ((x % p_) + p_) % p_;
    }

    static OElem constant(int p, int alpha, long v)
    {
        OElem e(p, alpha);
        e.c_[0] = static_cast<int>(((v % p) + p) % p);
        return e;
    }
    // c * t^k (zero if k >= alpha).
    static OElem t_power(int p, int alpha, int k, long c = 1)
    {
        OElem e(p, alpha);
        if (k < alpha)
            e.c_[static_cast<std::size_t>(k)] = static_cast<int>(((c % p) + p) % p);
        return e;
    }

    int p() const { return p_; }
    int alpha() const { return alpha_; }
    const std::vector<int>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (int x : c_)
            if (x)
                return false;
        return true;
    }
    bool is_unit() const { return c_[0] != 0; }

    // Smallest k with a nonzero coefficient; alpha for the zero element.
    int valuation() const
    {
        for (int k = 0; k < alpha_; ++k)
            if (c_[static_cast<std::size_t>(k)])
                return k;
        return alpha_;
    }

    OElem& operator+=(const OElem& o)
    {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] = (c_[k] + o.c_[k]) % p_;
        return *this;
    }
    OElem& operator-=(const OElem& o)
    {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] = (c_[k] - o.c_[k] + p_) % p_;
        return *this;
    }
    friend OElem operator+(OElem a, const OElem& b) { return a += b; }
    friend OElem operator-(OElem a, const OElem& b) { return a -= b; }
    friend OElem operator-(const OElem& a) { return OElem(a.p_, a.alpha_) - a; }
    friend OElem operator*(const OElem& a, const OElem& b)
    {
        a.check(b);
        OElem r(a.p_, a.alpha_);
        for (int i = 0; i < a.alpha_; ++i) {
            if (!a.c_[static_cast<std::size_t>(i)])
                continue;
            for (int j = 0; i + j < a.alpha_; ++j)
                r.c_[static_cast<std::size_t>(i + j)] =
                    static_cast<int>((r.c_[static_cast<std::size_t>(i + j)] +
                                      static_cast<long>(a.c_[static_cast<std::size_t>(i)]) * b.c_[static_cast<std::size_t>(j)]) %
                                     a.p_);
        }
        return r;
    }
    friend bool operator==(const OElem&, const OElem&) = default;

    OElem inverse() const
    {
        if (!is_unit())
            throw std::domain_error("non-unit");
        // Newton iteration u <- u (2 - x u) doubles the t-adic precision.
        OElem u = constant(p_, alpha_, mod_inverse(c_[0], p_));
        const OElem two = constant(p_, alpha_, 2);
        for (int prec = 1; prec < alpha_; prec *= 2)
            u = u * (two - *this * u);
        return u;
    }

    // x / t for x with positive valuation, as an element of O_{alpha-1}.
    OElem divide_by_t() const
    {
        if (alpha_ <= 1 || c_[0] != 0)
            throw std::domain_error("divide_by_t: element is not divisible by t");
        return OElem(p_, alpha_ - 1, std::vector<int>(c_.begin() + 1, c_.end()));
    }

    std::string to_string() const
    {
        std::string out;
        for (int k = 0; k < alpha_; ++k) {
            int v = c_[static_cast<std::size_t>(k)];
            if (!v)
                continue;
            if (!out.empty())
                out += "+";
            if (k == 0 || v != 1)
                out += std::to_string(v);
            if (k >= 1)
                out += "t";
            if (k >= 2)
                out += "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

    static int mod_inverse(int a, int p)
    {
        long r = 1;
        long b = ((a % p) + p) % p;
        for (int e = p - 2; e > 0; e >>= 1) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
        }
        return static_cast<int>(r);
    }

private:
    void validate() const
    {
        if (!is_prime(p_))
            throw std::invalid_argument("p must be prime");
        if (alpha_ < 1)
            throw std::invalid_argument("alpha must be >= 1");
    }
    void check(const OElem& o) const
    {
        if (o.p_ != p_ || o.alpha_ != alpha_)
            throw std::invalid_argument("OElem: mismatched ring");
    }

    int p_ = 2;
    int alpha_ = 1;
    std::vector<int> c_{0};
};

/// Matrix over O_alpha, row-major.
class OMatrix {
public:
    OMatrix() = default;
    OMatrix(int rows, int cols, int p, int alpha)
        : rows_(rows), cols_(cols), p_(p), alpha_(alpha),
          e_(static_cast<std::size_t>(rows * cols), OElem(p, alpha))
    {
    }

    static OMatrix identity(int n, int p, int alpha)
    {
        OMatrix m(n, n, p, alpha);
        for (int i = 0; i < n; ++i)
            m(i, i) = OElem::constant(p, alpha, 1);
        return m;
    }
    static OMatrix scalar(int n, const OElem& s)
    {
        OMatrix m(n, n, s.p(), s.alpha());
        for (int i = 0; i < n; ++i)
            m(i, i) = s;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }
    int alpha() const { return alpha_; }

    OElem& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
    const OElem& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }

    friend OMatrix operator*(const OMatrix& a, const OMatrix& b)
    {
        if (a.cols_ != b.rows_ || a.p_ != b.p_ || a.alpha_ != b.alpha_)
            throw std::invalid_argument("matrix shape mismatch");
        OMatrix r(a.rows_, b.cols_, a.p_, a.alpha_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j)
                for (int k = 0; k < a.cols_; ++k)
                    r(i, j) += a(i, k) * b(k, j);
        return r;
    }
    friend OMatrix operator+(OMatrix a, const OMatrix& b)
    {
        a.check_same_shape(b);
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            a.e_[k] += b.e_[k];
        return a;
    }
    friend OMatrix operator-(OMatrix a, const OMatrix& b)
    {
        a.check_same_shape(b);
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            a.e_[k] -= b.e_[k];
        return a;
    }
    friend bool operator==(const OMatrix&, const OMatrix&) = default;

    bool is_zero() const
    {
        for (const auto& x : e_)
            if (!x.is_zero())
                return false;
        return true;
    }

    // Invertible over O_alpha iff the reduction mod t is invertible over F_p.
    bool is_invertible() const
    {
        if (rows_ != cols_)
            return false;
        std::vector<std::vector<int>> m(static_cast<std::size_t>(rows_), std::vector<int>(static_cast<std::size_t>(cols_)));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j).coeffs()[0];
        return rank_mod_p(m, p_) == rows_;
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            out += i ? "; " : "";
            for (int j = 0; j < cols_; ++j)
                out += (j ? ", " : "") + (*this)(i, j).to_string();
        }
        return out + "]";
    }

    // Rank of an integer matrix over F_p (destroys m).
    static int rank_mod_p(std::vector<std::vector<int>> m, int p)
    {
        const std::size_t rows = m.size();
        const std::size_t cols = rows ? m[0].size() : 0;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t piv = rank;
            while (piv < rows && m[piv][c] % p == 0)
                ++piv;
            if (piv == rows)
                continue;
            std::swap(m[piv], m[rank]);
            const long inv = OElem::mod_inverse(m[rank][c], p);
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == rank || m[r][c] % p == 0)
                    continue;
                const long f = m[r][c] * inv % p;
                for (std::size_t k = c; k < cols; ++k)
                    m[r][k] = static_cast<int>(((m[r][k] - f * m[rank][k]) % p + p) % p);
            }
            ++rank;
        }
        return static_cast<int>(rank);
    }

private:
    void check_same_shape(const OMatrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_ || p_ != b.p_ || alpha_ != b.alpha_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    int p_ = 2;
    int alpha_ = 1;
    std::vector<OElem> e_;
};

inline OMatrix commutator(const OMatrix& a, const OMatrix& b)
{
    return a * b - b * a;
}

/// Every element of O_alpha, in base-p index order (coefficient of t^0 varies fastest).
inline std::vector<OElem> all_elements(int p, int alpha)
{
    const std::uint64_t n = checked_power(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(alpha));
    std::vector<OElem> out;
    out.reserve(n);
    std::vector<int> c(static_cast<std::size_t>(alpha), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t x = i;
        for (auto& d : c) {
            d = static_cast<int>(x % static_cast<std::uint64_t>(p));
            x /= static_cast<std::uint64_t>(p);
        }
        out.emplace_back(p, alpha, c);
    }
    return out;
}

/// Visit every element of GL(r, O_alpha).
inline void for_each_gl(int r, int p, int alpha, const std::function<void(const OMatrix&)>& visit,
                        std::uint64_t guard = kDefaultGuard)
{
    if (r < 0)
        throw std::invalid_argument("negative rank");
    const std::uint64_t entries = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r);
    check_guard(checked_power(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(alpha) * entries), guard);
    const auto elems = all_elements(p, alpha);
    std::vector<std::size_t> idx(entries, 0);
    OMatrix m(r, r, p, alpha);
    for (std::size_t k = 0; k < entries; ++k)
        m(static_cast<int>(k) / r, static_cast<int>(k) % r) = elems[0];
    while (true) {
        if (m.is_invertible())
            visit(m);
        std::size_t k = 0;
        for (; k < entries; ++k) {
            if (++idx[k] < elems.size()) {
                m(static_cast<int>(k) / r, static_cast<int>(k) % r) = elems[idx[k]];
                break;
            }
            idx[k] = 0;
            m(static_cast<int>(k) / r, static_cast<int>(k) % r) = elems[0];
        }
        if (k == entries)
            break;
    }
}

inline std::vector<OMatrix> enumerate_gl(int r, int p, int alpha, std::uint64_t guard = kDefaultGuard)
{
    std::vector<OMatrix> out;
    for_each_gl(r, p, alpha, [&](const OMatrix& m) { out.push_back(m); }, guard);
    return out;
}

/// |GL(r, O_alpha)| as a polynomial in q: prod_i q^{alpha r_i^2} prod_{k=1}^{r_i} (1 - q^{-k}).
inline LaurentPoly group_order_gl(const std::vector<int>& ranks, int alpha)
{
    LaurentPoly result(1);
    for (int r : ranks) {
        if (r < 0)
            throw std::invalid_argument("negative rank");
        LaurentPoly factor = LaurentPoly::q(alpha * r * r);
        for (int k = 1; k <= r; ++k)
            factor *= LaurentPoly(1) - LaurentPoly::q(-k);
        result *= factor;
    }
    return result;
}

/// Index-encoded arithmetic tables for O_alpha, used by the brute-force scans.
/// Element index = sum_k coeff_k p^k.
class RingTables {
public:
    RingTables(int p, int alpha) : p_(p), alpha_(alpha)
    {
        if (!is_prime(p))
            throw std::invalid_argument("p must be prime");
        if (alpha < 1)
            throw std::invalid_argument("alpha must be >= 1");
        const std::uint64_t n64 = checked_power(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(alpha));
        if (n64 > 4096)
            throw GuardExceeded("ring O_alpha too large for table arithmetic");
        n_ = static_cast<int>(n64);
        const auto elems = all_elements(p, alpha);
        add_.resize(static_cast<std::size_t>(n_ * n_));
        mul_.resize(static_cast<std::size_t>(n_ * n_));
        neg_.resize(static_cast<std::size_t>(n_));
        val_.resize(static_cast<std::size_t>(n_));
        for (int a = 0; a < n_; ++a) {
            neg_[static_cast<std::size_t>(a)] = encode(-elems[static_cast<std::size_t>(a)]);
            val_[static_cast<std::size_t>(a)] = elems[static_cast<std::size_t>(a)].valuation();
            for (int b = 0; b < n_; ++b) {
                add_[static_cast<std::size_t>(a * n_ + b)] = encode(elems[static_cast<std::size_t>(a)] + elems[static_cast<std::size_t>(b)]);
                mul_[static_cast<std::size_t>(a * n_ + b)] = encode(elems[static_cast<std::size_t>(a)] * elems[static_cast<std::size_t>(b)]);
            }
        }
    }

    int p() const { return p_; }
    int alpha() const { return alpha_; }
    int size() const { return n_; }

    int add(int a, int b) const { return add_[static_cast<std::size_t>(a * n_ + b)]; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * n_ + b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int valuation(int a) const { return val_[static_cast<std::size_t>(a)]; }
    bool is_unit(int a) const { return a % p_ != 0; }

    int encode(const OElem& e) const
    {
        int idx = 0;
        for (int k = alpha_ - 1; k >= 0; --k)
            idx = idx * p_ + e.coeffs()[static_cast<std::size_t>(k)];
        return idx;
    }
    OElem decode(int idx) const
    {
        std::vector<int> c(static_cast<std::size_t>(alpha_));
        for (auto& d : c) {
            d = idx % p_;
            idx /= p_;
        }
        return OElem(p_, alpha_, c);
    }

private:
    int p_;
    int alpha_;
    int n_ = 0;
    std::vector<int> add_, mul_, neg_, val_;
};

/// Dimension over F_p of the centraliser {X in M_r(O_alpha) : gX = Xg}.
inline int centralizer_dim(const OMatrix& g)
{
    const int r = g.rows(), p = g.p(), alpha = g.alpha();
    const int dim = r * r * alpha;
    // column (i, j, k) holds ad_g applied to t^k E_ij, in coordinates (i', j', k')
    std::vector<std::vector<int>> m(static_cast<std::size_t>(dim), std::vector<int>(static_cast<std::size_t>(dim), 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < alpha; ++k) {
                OMatrix x(r, r, p, alpha);
                x(i, j) = OElem::t_power(p, alpha, k);
                const OMatrix c = g * x - x * g;
                const int col = (i * r + j) * alpha + k;
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b)
                        for (int kk = 0; kk < alpha; ++kk)
                            m[static_cast<std::size_t>((a * r + b) * alpha + kk)][static_cast<std::size_t>(col)] =
                                c(a, b).coeffs()[static_cast<std::size_t>(kk)];
            }
    return dim - OMatrix::rank_mod_p(std::move(m), p);
}

/// Number of GL(r, O_alpha)-orbits on M_r(O_alpha)^g under simultaneous
/// conjugation, by Burnside's lemma.
inline Integer burnside_orbit_count(int r, int g, int p, int alpha, std::uint64_t guard = kDefaultGuard)
{
    if (r < 1 || g < 0)
        throw std::invalid_argument("rank must be >= 1 and loop count >= 0");
    Integer total = 0;
    Integer order = 0;
    mpz_class pz = p;
    for_each_gl(r, p, alpha, [&](const OMatrix& x) {
        mpz_class fixed;
        mpz_pow_ui(fixed.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(g) * static_cast<unsigned long>(centralizer_dim(x)));
        total += fixed;
        order += 1;
    }, guard);
    if (total % order != 0)
        throw MathMismatch("Burnside sum not divisible by group order");
    return total / order;
}

} // namespace kacdepth
