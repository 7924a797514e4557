#pragma once

#include <vector>

#include "thhk/padic.hpp"

namespace thhk {

/// An element of Z_p[x]/(x^M) with per-coefficient precision.  The variable x
/// is the class 1 - L of the projective-space K-theory model; the constant
/// term is the restriction along a point.
class TruncatedSeries {
public:
    TruncatedSeries(std::int64_t prime, int truncation, std::vector<PadicInt> coeffs)
        : prime_(prime), truncation_(truncation), c_(std::move(coeffs)) {
        if (truncation_ < 1)
            throw std::invalid_argument("TruncatedSeries: truncation must be >= 1");
        if ((int)c_.size() != truncation_)
            throw std::invalid_argument("TruncatedSeries: coefficient count != truncation");
        for (const auto& c : c_)
            if (c.prime() != prime_)
                throw std::invalid_argument("TruncatedSeries: prime mismatch in coefficients");
    }

    static TruncatedSeries zero(std::int64_t p, int precision, int truncation) {
        return TruncatedSeries(p, truncation,
                               std::vector<PadicInt>(truncation, PadicInt::zero(p, precision)));
    }

    static TruncatedSeries constant(const PadicInt& value, int truncation) {
        TruncatedSeries s = zero(value.prime(), value.precision(), truncation);
        s.c_[0] = value;
        return s;
    }

    static TruncatedSeries monomial(const PadicInt& value, int degree, int truncation) {
        if (degree < 0 || degree >= truncation)
            throw std::invalid_argument("TruncatedSeries: monomial degree out of range");
        TruncatedSeries s = zero(value.prime(), value.precision(), truncation);
        s.c_[degree] = value;
        return s;
    }

    /// x itself, with unit coefficient at the given precision.
    static TruncatedSeries x(std::int64_t p, int precision, int truncation) {
        return monomial(PadicInt::one(p, precision), 1, truncation);
    }

    std::int64_t prime() const { return prime_; }
    int truncation() const { return truncation_; }
    const PadicInt& coeff(int i) const { return c_.at(i); }
    const std::vector<PadicInt>& coefficients() const { return c_; }

    int min_precision() const {
        int m = c_[0].precision();
        for (const auto& c : c_) m = std::min(m, c.precision());
        return m;
    }

    bool is_zero_at_precision() const {
        for (const auto& c : c_)
            if (!c.is_zero_at_precision()) return false;
        return true;
    }

    TruncatedSeries with_coeff(int i, PadicInt v) const {
        TruncatedSeries s = *this;
        s.c_.at(i) = std::move(v);
        return s;
    }

private:
    std::int64_t prime_;
    int truncation_;
    std::vector<PadicInt> c_;
};

namespace detail {
inline void require_same_prime(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.prime() != b.prime())
        throw std::invalid_argument("TruncatedSeries: prime mismatch");
}
} // namespace detail

inline TruncatedSeries restrict_truncation(const TruncatedSeries& f, int truncation) {
    if (truncation > f.truncation())
        throw std::invalid_argument("restrict_truncation: cannot extend a series");
    std::vector<PadicInt> c(f.coefficients().begin(), f.coefficients().begin() + truncation);
    return TruncatedSeries(f.prime(), truncation, std::move(c));
}

inline TruncatedSeries reduce_to(const TruncatedSeries& f, int precision) {
    std::vector<PadicInt> c;
    c.reserve(f.truncation());
    for (const auto& ci : f.coefficients()) c.push_back(reduce_to(ci, precision));
    return TruncatedSeries(f.prime(), f.truncation(), std::move(c));
}

namespace detail {
inline TruncatedSeries assume_precision(const TruncatedSeries& f, int precision) {
    std::vector<PadicInt> c;
    c.reserve(f.truncation());
    for (const auto& ci : f.coefficients()) c.push_back(assume_precision(ci, precision));
    return TruncatedSeries(f.prime(), f.truncation(), std::move(c));
}
} // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g) {
    detail::require_same_prime(f, g);
    int m = std::min(f.truncation(), g.truncation());
    std::vector<PadicInt> c;
    c.reserve(m);
    for (int i = 0; i < m; ++i) c.push_back(add(f.coeff(i), g.coeff(i)));
    return TruncatedSeries(f.prime(), m, std::move(c));
}

inline TruncatedSeries series_sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    detail::require_same_prime(f, g);
    int m = std::min(f.truncation(), g.truncation());
    std::vector<PadicInt> c;
    c.reserve(m);
    for (int i = 0; i < m; ++i) c.push_back(sub(f.coeff(i), g.coeff(i)));
    return TruncatedSeries(f.prime(), m, std::move(c));
}

inline TruncatedSeries series_neg(const TruncatedSeries& f) {
    std::vector<PadicInt> c;
    c.reserve(f.truncation());
    for (const auto& ci : f.coefficients()) c.push_back(neg(ci));
    return TruncatedSeries(f.prime(), f.truncation(), std::move(c));
}

inline TruncatedSeries scale(const TruncatedSeries& f, const PadicInt& a) {
    std::vector<PadicInt> c;
    c.reserve(f.truncation());
    for (const auto& ci : f.coefficients()) c.push_back(mul(ci, a));
    return TruncatedSeries(f.prime(), f.truncation(), std::move(c));
}

inline TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    detail::require_same_prime(f, g);
    int m = std::min(f.truncation(), g.truncation());
    std::vector<PadicInt> c(m, PadicInt::zero(f.prime(), 1));
    for (int k = 0; k < m; ++k) {
        PadicInt acc = mul(f.coeff(0), g.coeff(k));
        for (int i = 1; i <= k; ++i) acc = add(acc, mul(f.coeff(i), g.coeff(k - i)));
        c[k] = acc;
    }
    return TruncatedSeries(f.prime(), m, std::move(c));
}

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return series_add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return series_sub(f, g); }
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return series_mul(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f) { return series_neg(f); }

/// Coefficientwise equality at the common per-coefficient precision.
inline bool congruent(const TruncatedSeries& f, const TruncatedSeries& g) {
    detail::require_same_prime(f, g);
    int m = std::min(f.truncation(), g.truncation());
    for (int i = 0; i < m; ++i)
        if (!congruent(f.coeff(i), g.coeff(i))) return false;
    return true;
}

inline bool operator==(const TruncatedSeries& f, const TruncatedSeries& g) { return congruent(f, g); }
inline bool operator!=(const TruncatedSeries& f, const TruncatedSeries& g) { return !congruent(f, g); }

inline TruncatedSeries series_pow(const TruncatedSeries& f, std::uint64_t e) {
    TruncatedSeries r = TruncatedSeries::constant(
        PadicInt::one(f.prime(), f.min_precision()), f.truncation());
    TruncatedSeries b = f;
    while (e) {
        if (e & 1) r = series_mul(r, b);
        e >>= 1;
        if (e) b = series_mul(b, b);
    }
    return r;
}

/// f(g(x)) mod x^M by Horner evaluation.  For the substitution to respect the
/// truncation the constant term of g should vanish; a nonzero constant term
/// evaluates the representing polynomial of f at g.
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    detail::require_same_prime(f, g);
    int m = std::min(f.truncation(), g.truncation());
    TruncatedSeries gg = restrict_truncation(g, m);
    TruncatedSeries acc = TruncatedSeries::constant(f.coeff(f.truncation() - 1), m);
    for (int k = f.truncation() - 2; k >= 0; --k) {
        acc = series_mul(acc, gg);
        acc = acc.with_coeff(0, add(acc.coeff(0), f.coeff(k)));
    }
    return acc;
}

/// (1-x)^a for a p-adic exponent a, via the binomial series
/// sum_n C(a,n) (-x)^n.  Each division by n costs v_p(n) digits on that
/// coefficient, so coefficients from degree p on carry less precision.
inline TruncatedSeries binomial_one_minus_pow(const PadicInt& a, int truncation) {
    std::int64_t p = a.prime();
    std::vector<PadicInt> c;
    c.reserve(truncation);
    c.push_back(PadicInt::one(p, a.precision()));
    PadicInt cur = c[0]; // running value of C(a,n)
    for (int n = 1; n < truncation; ++n) {
        cur = mul(cur, sub(a, PadicInt::from_int(p, a.precision(), n - 1)));
        int k = detail::int_valuation(n, p);
        std::int64_t unit_part = n;
        for (int i = 0; i < k; ++i) {
            if (cur.precision() < 2)
                throw precision_error("binomial_one_minus_pow: precision exhausted by n! division");
            cur = divide_by_p(cur);
            unit_part /= p;
        }
        if (unit_part != 1) cur = mul(cur, detail::invert_small(unit_part, p, cur.precision()));
        c.push_back(n % 2 == 1 ? neg(cur) : cur);
    }
    return TruncatedSeries(p, truncation, std::move(c));
}

/// Formal derivative; drops the truncation by one since the top coefficient
/// of the derivative is not determined by a class known mod x^M.
inline TruncatedSeries derivative(const TruncatedSeries& f) {
    int m = f.truncation();
    if (m == 1)
        return TruncatedSeries::zero(f.prime(), f.coeff(0).precision(), 1);
    std::vector<PadicInt> c;
    c.reserve(m - 1);
    for (int n = 1; n < m; ++n)
        c.push_back(mul(f.coeff(n), PadicInt::from_int(f.prime(), f.coeff(n).precision(), n)));
    return TruncatedSeries(f.prime(), m - 1, std::move(c));
}

/// Inverse of a series with unit constant term, by triangular back-substitution.
inline TruncatedSeries invert_unit(const TruncatedSeries& f) {
    if (!f.coeff(0).is_unit())
        throw std::domain_error("invert_unit: constant term is not a unit");
    int m = f.truncation();
    PadicInt c0inv = invert(f.coeff(0));
    std::vector<PadicInt> g;
    g.reserve(m);
    g.push_back(c0inv);
    for (int n = 1; n < m; ++n) {
        PadicInt acc = mul(f.coeff(1), g[n - 1]);
        for (int i = 2; i <= n; ++i) acc = add(acc, mul(f.coeff(i), g[n - i]));
        g.push_back(neg(mul(acc, c0inv)));
    }
    return TruncatedSeries(f.prime(), m, std::move(g));
}

/// (1-x)^e for a plain integer exponent, computed exactly (no precision loss).
inline TruncatedSeries one_minus_x_pow_int(std::int64_t p, int precision, int truncation,
                                           std::int64_t e) {
    TruncatedSeries base = TruncatedSeries::constant(PadicInt::one(p, precision), truncation);
    if (truncation > 1) base = base.with_coeff(1, neg(PadicInt::one(p, precision)));
    std::uint64_t mag = e >= 0 ? (std::uint64_t)e : (std::uint64_t)(-(e + 1)) + 1;
    TruncatedSeries pw = series_pow(base, mag);
    return e >= 0 ? pw : invert_unit(pw);
}

/// log of a series whose coefficients are all congruent to those of 1 mod p.
/// Convergence is p-adic per coefficient, not x-adic.
inline TruncatedSeries series_log(const TruncatedSeries& f) {
    std::int64_t p = f.prime();
    int n_prec = f.min_precision();
    int m = f.truncation();
    TruncatedSeries w = series_sub(f, TruncatedSeries::constant(PadicInt::one(p, n_prec), m));
    if (w.is_zero_at_precision()) return TruncatedSeries::zero(p, n_prec, m);
    int vw = n_prec;
    for (const auto& ci : w.coefficients()) vw = std::min(vw, ci.valuation());
    if (vw < 1)
        throw std::domain_error("series_log: argument must be congruent to 1 mod p");

    std::int64_t n_stop = 1;
    while (n_stop * vw - detail::floor_log(n_stop, p) < n_prec) ++n_stop;
    int work = n_prec + detail::floor_log(n_stop, p);

    TruncatedSeries wl = detail::assume_precision(w, work);
    TruncatedSeries power = wl;
    TruncatedSeries acc = TruncatedSeries::zero(p, work, m);
    for (std::int64_t n = 1; n <= n_stop; ++n) {
        TruncatedSeries term = power;
        int k = detail::int_valuation(n, p);
        std::int64_t unit_part = n;
        std::vector<PadicInt> tc;
        tc.reserve(m);
        for (const auto& ci : term.coefficients()) {
            Nat q = ci.residue();
            for (int i = 0; i < k; ++i) q = Nat::divmod_small(q, (std::uint32_t)p).first;
            tc.push_back(PadicInt(p, work, q));
        }
        term = TruncatedSeries(p, m, std::move(tc));
        for (int i = 0; i < k; ++i) unit_part /= p;
        if (unit_part != 1) term = scale(term, detail::invert_small(unit_part, p, work));
        acc = (n % 2 == 1) ? series_add(acc, term) : series_sub(acc, term);
        if (n < n_stop) power = series_mul(power, wl);
    }
    return reduce_to(acc, n_prec);
}

/// exp of a series whose coefficients all have valuation >= 1.
inline TruncatedSeries series_exp(const TruncatedSeries& f) {
    std::int64_t p = f.prime();
    int n_prec = f.min_precision();
    int m = f.truncation();
    if (f.is_zero_at_precision())
        return TruncatedSeries::constant(PadicInt::one(p, n_prec), m);
    int vz = n_prec;
    for (const auto& ci : f.coefficients()) vz = std::min(vz, ci.valuation());
    if (vz < 1)
        throw std::domain_error("series_exp: coefficients must have valuation >= 1");

    std::int64_t n_stop = 1;
    while (n_stop * vz * (p - 1) - (n_stop - 1) < (std::int64_t)n_prec * (p - 1)) ++n_stop;
    int work = n_prec + detail::factorial_valuation(n_stop, p);

    TruncatedSeries zl = detail::assume_precision(f, work);
    TruncatedSeries term = TruncatedSeries::constant(PadicInt::one(p, work), m);
    TruncatedSeries acc = term;
    for (std::int64_t n = 1; n <= n_stop; ++n) {
        term = series_mul(term, zl);
        int k = detail::int_valuation(n, p);
        std::int64_t unit_part = n;
        if (k > 0) {
            std::vector<PadicInt> tc;
            tc.reserve(m);
            for (const auto& ci : term.coefficients()) {
                Nat q = ci.residue();
                for (int i = 0; i < k; ++i) q = Nat::divmod_small(q, (std::uint32_t)p).first;
                tc.push_back(PadicInt(p, work, q));
            }
            term = TruncatedSeries(p, m, std::move(tc));
            for (int i = 0; i < k; ++i) unit_part /= p;
        }
        if (unit_part != 1) term = scale(term, detail::invert_small(unit_part, p, work));
        acc = series_add(acc, term);
    }
    return reduce_to(acc, n_prec);
}

} // namespace thhk
