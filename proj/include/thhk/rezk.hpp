#pragma once

#include "thhk/adams.hpp"

namespace thhk {

/// A unit of the truncated K-theory ring: a series with unit constant term,
/// together with the Teichmueller / 1-unit decomposition of that constant.
class UnitSeries {
public:
    explicit UnitSeries(TruncatedSeries body)
        : body_(std::move(body)),
          omega_(PadicInt::one(body_.prime(), 1)),
          one_unit_(PadicInt::one(body_.prime(), 1)) {
        const PadicInt& c0 = body_.coeff(0);
        if (!c0.is_unit())
            throw std::domain_error("UnitSeries: constant term is not a unit");
        std::int64_t p = body_.prime();
        std::int64_t r0 = (std::int64_t)Nat::divmod_small(c0.residue(), (std::uint32_t)p).second;
        omega_ = teichmuller(p, c0.precision(), r0);
        one_unit_ = mul(c0, invert(omega_));
    }

    const TruncatedSeries& body() const { return body_; }
    std::int64_t prime() const { return body_.prime(); }
    int truncation() const { return body_.truncation(); }

    /// Teichmueller part of the constant term.
    const PadicInt& omega() const { return omega_; }
    /// 1-unit part of the constant term.
    const PadicInt& one_unit() const { return one_unit_; }

private:
    TruncatedSeries body_;
    PadicInt omega_;
    PadicInt one_unit_;
};

/// The logarithm -(1/p) log(psi_p(u) / u^p) on unit series.  The quotient is
/// congruent to 1 mod p coefficientwise (Frobenius), which the implementation
/// asserts rather than assumes; the output carries one digit less than the
/// input.
inline TruncatedSeries rezk_log(const UnitSeries& u) {
    std::int64_t p = u.prime();
    int m = u.truncation();
    int n_prec = u.body().min_precision();
    if (n_prec < 2)
        throw precision_error("rezk_log: need at least two digits of input precision");

    TruncatedSeries psix = series_sub(
        TruncatedSeries::constant(PadicInt::one(p, n_prec), m),
        one_minus_x_pow_int(p, n_prec, m, p));
    TruncatedSeries num = compose(u.body(), psix);
    TruncatedSeries den = invert_unit(series_pow(u.body(), (std::uint64_t)p));
    TruncatedSeries q = series_mul(num, den);

    TruncatedSeries w = series_sub(
        q, TruncatedSeries::constant(PadicInt::one(p, q.min_precision()), m));
    for (const auto& ci : w.coefficients())
        if (ci.valuation() < 1)
            throw std::logic_error(
                "rezk_log: psi_p(u)/u^p is not congruent to 1 mod p (arithmetic bug)");

    TruncatedSeries lg = series_log(q);
    std::vector<PadicInt> out;
    out.reserve(m);
    for (const auto& ci : lg.coefficients()) out.push_back(neg(divide_by_p(ci)));
    return TruncatedSeries(p, m, std::move(out));
}

namespace detail {

// depth of the division chain j -> j/p -> j/p^2 ... that feeds coefficient j
inline int chain_depth(int j, std::int64_t p) {
    int d = 0;
    while (j >= p) {
        j = (int)(j / p);
        ++d;
    }
    return d;
}

// Solve psi_p(u) = E * u^p for a series u with 1-unit constant term and zero
// x-coefficient, coefficient by coefficient, at working precision n_work.
// E = exp(-p * t) for the (lifted) target t.
inline TruncatedSeries solve_core(const TruncatedSeries& target, int n_work, int n_out) {
    std::int64_t p = target.prime();
    int m = target.truncation();
    TruncatedSeries t = assume_precision(target, n_work);
    TruncatedSeries e = series_exp(scale(t, PadicInt::from_int(p, n_work, -p)));
    e = assume_precision(e, n_work);

    // constant term: log u_0 = p t_0 / (p-1)
    PadicInt z = mul(mul(t.coeff(0), PadicInt::from_int(p, n_work, p)),
                     invert_small(p - 1, p, n_work));
    PadicInt u0 = exp_padic(z);

    std::vector<PadicInt> u(m, PadicInt::zero(p, n_work));
    u[0] = u0;

    // powers of psi_p(x) = 1 - (1-x)^p, exact integer coefficients
    TruncatedSeries psix = series_sub(
        TruncatedSeries::constant(PadicInt::one(p, n_work), m),
        one_minus_x_pow_int(p, n_work, m, p));
    std::vector<TruncatedSeries> psipow;
    psipow.reserve(m);
    psipow.push_back(TruncatedSeries::constant(PadicInt::one(p, n_work), m));
    for (int i = 1; i < m; ++i) psipow.push_back(series_mul(psipow.back(), psix));

    PadicInt kappa_const = mul(e.coeff(0), pow_int(u0, (std::uint64_t)(p - 1)));
    PadicInt p_el = PadicInt::from_int(p, n_work, p);

    for (int j = 2; j < m; ++j) {
        TruncatedSeries us(p, m, u);
        TruncatedSeries up = series_pow(restrict_truncation(us, j + 1), (std::uint64_t)p);
        // residual F_j = [psi(u) - E u^p]_j with the u_j slot still zero
        PadicInt lhs = PadicInt::zero(p, n_work);
        for (int i = 0; i <= j; ++i) lhs = add(lhs, mul(u[i], psipow[i].coeff(j)));
        PadicInt rhs = PadicInt::zero(p, n_work);
        for (int k = 0; k <= j; ++k) rhs = add(rhs, mul(e.coeff(k), up.coeff(j - k)));
        PadicInt f = sub(lhs, rhs);
        // linear coefficient of u_j: p (p^{j-1} - E_0 u_0^{p-1}), a p times a unit
        PadicInt a = mul(p_el, sub(pow_int(p_el, (std::uint64_t)(j - 1)), kappa_const));
        if (f.valuation() < 1 || a.valuation() != 1)
            throw std::logic_error("solve_unit: digit equation lost its p factor (arithmetic bug)");
        if (f.precision() < 2 || a.precision() < 2)
            throw precision_error("solve_unit: working precision exhausted");
        u[j] = neg(mul(divide_by_p(f), invert(divide_by_p(a))));
    }

    // stamp certified output precision: n_out, less one digit per level of
    // the j -> j/p division chain
    std::vector<PadicInt> out;
    out.reserve(m);
    for (int j = 0; j < m; ++j) {
        int prec = std::min(u[j].precision(), n_out - (j >= 2 ? chain_depth(j, p) : 0));
        if (prec < 1)
            throw precision_error("solve_unit: no certified digits remain for coefficient " +
                                  std::to_string(j));
        out.push_back(reduce_to(u[j], prec));
    }
    return TruncatedSeries(p, m, std::move(out));
}

} // namespace detail

/// Invert the logarithm: find u = teich(omega) * (1-x)^line * u_core with
/// rezk_log(u) = target, where u_core has 1-unit constant term and zero
/// x-coefficient.  The target must have vanishing x-coefficient at its
/// carried precision; nothing else obstructs.  Internal working precision
/// starts at n_out + M and widens once before giving up.
inline UnitSeries solve_unit(const TruncatedSeries& target, std::int64_t omega_part,
                             const PadicInt& line_exponent) {
    std::int64_t p = target.prime();
    int m = target.truncation();
    if (m < 2)
        throw std::invalid_argument("solve_unit: truncation must be >= 2");
    int n_out = target.min_precision();
    if (n_out < 2)
        throw precision_error("solve_unit: target must carry at least two digits");
    for (const auto& ci : target.coefficients())
        if (ci.prime() != p) throw std::invalid_argument("solve_unit: prime mismatch");
    std::int64_t w0 = omega_part % p;
    if (w0 < 0) w0 += p;
    if (w0 == 0)
        throw std::invalid_argument("solve_unit: omega part must be a unit residue mod p");

    // the logarithm has no x-coefficient in its image
    if (!target.coeff(1).is_zero_at_precision())
        throw not_in_image_error(
            "solve_unit: target has a nonzero x-coefficient, which no unit realizes");

    TruncatedSeries core = TruncatedSeries::zero(p, 1, 1);
    bool solved = false;
    for (int attempt = 0; attempt < 2 && !solved; ++attempt) {
        int n_work = n_out + m + attempt * m;
        try {
            core = detail::solve_core(target, n_work, n_out);
            solved = true;
        } catch (const precision_error&) {
            if (attempt == 1) throw;
        }
    }

    int n_kernel = core.min_precision();
    PadicInt omega = teichmuller(p, n_kernel, w0);
    TruncatedSeries line_part =
        binomial_one_minus_pow(reduce_to(line_exponent,
                                         std::min(line_exponent.precision(), n_out + m)),
                               m);
    TruncatedSeries body = scale(series_mul(core, line_part), omega);
    return UnitSeries(body);
}

/// Factor a unit as teich(omega) * (1-x)^line * core, where core has 1-unit
/// constant term and exactly vanishing x-coefficient.  The line exponent is
/// read off the x-coefficient.
struct KernelDecomposition {
    PadicInt omega;
    PadicInt line;
    UnitSeries core;
};

inline KernelDecomposition kernel_check(const UnitSeries& u) {
    std::int64_t p = u.prime();
    int m = u.truncation();
    PadicInt omega = u.omega();
    TruncatedSeries v = scale(u.body(), invert(omega));
    if (m < 2) {
        return {omega, PadicInt::zero(p, v.coeff(0).precision()), UnitSeries(v)};
    }
    // core = v * (1-x)^(-line) has x-coefficient v_1 + line*v_0 = 0
    PadicInt line = neg(mul(v.coeff(1), invert(v.coeff(0))));
    TruncatedSeries core = series_mul(v, binomial_one_minus_pow(neg(line), m));
    return {omega, line, UnitSeries(core)};
}

} // namespace thhk
