#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "thhk/rezk.hpp"

namespace thhk {

/// Choice of extension data feeding the pipeline.  Every extension carries
/// the mandatory degree-2 summand datum (a polynomial g whose x-coefficient
/// is pinned by the sphere restriction); at most one further factor can be
/// switched on: a higher Adams summand with a scalar coefficient, a line
/// bundle with an integer exponent, or the 2-connective factor (which
/// contributes nothing at these truncations).
struct ExtensionSpec {
    enum class Factor { b_summand, summand_k, line_bundle, b2 };
    enum class BPoly { default_linear, beta_l };

    std::int64_t prime = 3;
    int truncation = 0;  // 0 means the default 2p
    int precision = 4;
    Factor factor = Factor::b_summand;
    BPoly b_poly = BPoly::default_linear;
    // Explicit degree-2 datum: g = alpha_p * (sum_i g_alpha_times[i] x^(i+1)).
    // Overrides b_poly when nonempty; the x-coefficient must restrict
    // correctly, which pins g_alpha_times[0] = -1.
    std::vector<std::int64_t> g_alpha_times;
    int summand_index = 0;    // k in 2..p-2 when factor == summand_k
    std::int64_t coeff = 1;   // scalar for summand_k
    std::int64_t line_a = 0;  // integer exponent for line_bundle
};

inline ExtensionSpec normalized(ExtensionSpec s) {
    if (!is_odd_prime(s.prime))
        throw std::invalid_argument("spec: prime must be an odd prime >= 3");
    if (s.truncation == 0) s.truncation = 2 * (int)s.prime;
    if (s.truncation < 2) throw std::invalid_argument("spec: truncation must be >= 2");
    if (s.precision < 2) throw std::invalid_argument("spec: precision must be >= 2");
    switch (s.factor) {
    case ExtensionSpec::Factor::summand_k:
        if (s.summand_index < 2 || s.summand_index > (int)s.prime - 2)
            throw std::invalid_argument(
                "spec: summand index must lie in 2..p-2 (index 1 is carried by the "
                "line-bundle and 2-connective factors)");
        break;
    case ExtensionSpec::Factor::b2:
        if (s.truncation < (int)s.prime)
            throw std::invalid_argument(
                "spec: the 2-connective factor is only admissible at truncation >= p");
        break;
    default:
        break;
    }
    return s;
}

struct TargetData {
    TruncatedSeries target;
    std::int64_t omega;
    PadicInt line;
};

namespace detail {

// The degree-2 summand polynomial g, at the requested truncation.  Its
// x-coefficient is -alpha so that after the transgression and projection the
// solved unit reproduces the distinguished restriction.
inline TruncatedSeries b_polynomial(const ExtensionSpec& s, int truncation, int precision) {
    std::int64_t p = s.prime;
    PadicInt alpha = alpha_p(p, precision);
    TruncatedSeries g = TruncatedSeries::zero(p, precision, truncation);
    if (!s.g_alpha_times.empty()) {
        if ((int)s.g_alpha_times.size() >= truncation)
            throw std::invalid_argument("spec: degree-2 polynomial does not fit the truncation");
        for (std::size_t i = 0; i < s.g_alpha_times.size(); ++i)
            g = g.with_coeff((int)i + 1,
                             mul(alpha, PadicInt::from_int(p, precision, s.g_alpha_times[i])));
    } else if (s.b_poly == ExtensionSpec::BPoly::default_linear) {
        g = g.with_coeff(1, neg(alpha));
    } else {
        // the projection of beta * L, scaled to restrict correctly:
        // -alpha (x + x^2/2 + x^3/2 + ...)
        PadicInt half = invert_small(2, p, precision);
        g = g.with_coeff(1, neg(alpha));
        for (int n = 2; n < truncation; ++n)
            g = g.with_coeff(n, neg(mul(alpha, half)));
    }
    return g;
}

inline TargetData build_target_at(const ExtensionSpec& s, int truncation, int n_target) {
    std::int64_t p = s.prime;
    int n_int = n_target + factorial_valuation(truncation + 2, p) + 2;

    TruncatedSeries g = b_polynomial(s, truncation + 1, n_int);
    PadicInt alpha = alpha_p(p, n_int);
    KClass beta_g(1, g);
    if (!congruent(restrict_to_s2(beta_g).second, neg(alpha)))
        throw std::invalid_argument("spec: degree-2 restriction of g is not the distinguished unit");

    TruncatedSeries target = projector(0, KClass(0, kappa(beta_g))).body();
    PadicInt line = PadicInt::zero(p, n_int);

    switch (s.factor) {
    case ExtensionSpec::Factor::b_summand:
    case ExtensionSpec::Factor::b2:
        break;
    case ExtensionSpec::Factor::line_bundle:
        line = PadicInt::from_int(p, n_int, 2 * s.line_a);
        break;
    case ExtensionSpec::Factor::summand_k: {
        PadicInt c = PadicInt::from_int(p, n_int, s.coeff);
        TruncatedSeries h = TruncatedSeries::monomial(c, 1, truncation + 1);
        TruncatedSeries extra = projector(s.summand_index, KClass(0, kappa(KClass(1, h)))).body();
        target = series_add(target, extra);
        break;
    }
    }
    if (target.min_precision() < n_target)
        throw precision_error("build_target: internal slack insufficient");
    return {reduce_to(target, n_target), 1, line};
}

} // namespace detail

/// Target series plus kernel parameters for the given extension choice.
inline TargetData build_target(const ExtensionSpec& spec_in) {
    ExtensionSpec s = normalized(spec_in);
    return detail::build_target_at(s, s.truncation, s.precision);
}

inline UnitSeries compute_unit(const ExtensionSpec& spec_in) {
    ExtensionSpec s = normalized(spec_in);
    TargetData td = detail::build_target_at(s, s.truncation, s.precision);
    return solve_unit(td.target, td.omega, td.line);
}

/// Valuation of c_0 - 1 and the least index with a unit coefficient.  The
/// unit has the expected shape exactly when v = 1.
struct NormalForm {
    int v;
    int k;
};

inline NormalForm normal_form(const UnitSeries& u) {
    PadicInt c0m1 = sub(u.body().coeff(0), PadicInt::one(u.prime(), u.body().coeff(0).precision()));
    bool v_known = !c0m1.is_zero_at_precision();
    int k = -1;
    for (int j = 1; j < u.truncation(); ++j) {
        if (u.body().coeff(j).is_unit()) {
            k = j;
            break;
        }
    }
    if (k < 0) {
        throw indeterminate_error(
            v_known ? "normal_form: no unit coefficient below the truncation"
                    : "normal_form: u - 1 vanishes at this precision and truncation");
    }
    if (!v_known)
        throw indeterminate_error("normal_form: valuation of c_0 - 1 exceeds the precision");
    return {c0m1.valuation(), k};
}

/// Square matrix over Z/p^N, stored row-major with exact residues.
struct ModMatrix {
    std::int64_t prime;
    int precision;
    int n;
    std::vector<Nat> e;

    Nat& at(int r, int c) { return e[(std::size_t)r * n + c]; }
    const Nat& at(int r, int c) const { return e[(std::size_t)r * n + c]; }
};

/// The matrix of multiplication by u - 1 on the dual basis {beta_i}: entry
/// (j, i) is the coefficient (u-1)_{i-j}, so column i lists (u-1)(beta_i).
inline ModMatrix toeplitz_matrix(const UnitSeries& u, int size, int precision) {
    std::int64_t p = u.prime();
    if (size > u.truncation())
        throw std::invalid_argument("toeplitz_matrix: size exceeds the truncation");
    std::vector<Nat> col(size);
    for (int d = 0; d < size; ++d) {
        PadicInt c = u.body().coeff(d);
        if (d == 0) c = sub(c, PadicInt::one(p, c.precision()));
        if (c.precision() < precision)
            throw precision_error("toeplitz_matrix: coefficients carry fewer digits than requested");
        col[d] = reduce_to(c, precision).residue();
    }
    ModMatrix m{p, precision, size, std::vector<Nat>((std::size_t)size * size)};
    for (int r = 0; r < size; ++r)
        for (int c = r; c < size; ++c) m.at(r, c) = col[c - r];
    return m;
}

/// Elementary-divisor exponents e_1 <= ... <= e_n of the cokernel over
/// Z/p^N, by valuation-pivot elimination (valid since Z/p^N is local).
/// An entry equal to N means "at least N": unresolved at this precision.
inline std::vector<int> smith_divisors(ModMatrix a) {
    std::int64_t p = a.prime;
    int n_prec = a.precision;
    int n = a.n;
    const Nat& mod = detail::prime_power(p, n_prec);
    auto val = [&](const Nat& x) {
        if (x.is_zero()) return n_prec;
        int v = 0;
        Nat cur = x;
        while (v < n_prec) {
            auto [q, rem] = Nat::divmod_small(cur, (std::uint32_t)p);
            if (rem) break;
            cur = q;
            ++v;
        }
        return v;
    };
    auto shift_down = [&](Nat x, int v) {
        for (int i = 0; i < v; ++i) x = Nat::divmod_small(x, (std::uint32_t)p).first;
        return x;
    };
    std::vector<int> out;
    int t = 0;
    for (; t < n; ++t) {
        int best_v = n_prec, br = -1, bc = -1;
        for (int r = t; r < n; ++r) {
            for (int c = t; c < n; ++c) {
                int v = val(a.at(r, c));
                if (v < best_v) {
                    best_v = v;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0) break; // everything remaining vanishes mod p^N
        if (br != t)
            for (int c = 0; c < n; ++c) std::swap(a.at(t, c), a.at(br, c));
        if (bc != t)
            for (int r = 0; r < n; ++r) std::swap(a.at(r, t), a.at(r, bc));
        Nat unit = shift_down(a.at(t, t), best_v);
        Nat uinv = invert(PadicInt(p, n_prec, unit)).residue();
        for (int r = t + 1; r < n; ++r) {
            if (a.at(r, t).is_zero()) continue;
            Nat q = Nat::mulmod(shift_down(a.at(r, t), best_v), uinv, mod);
            for (int c = t; c < n; ++c)
                a.at(r, c) = Nat::submod(a.at(r, c), Nat::mulmod(q, a.at(t, c), mod), mod);
        }
        for (int c = t + 1; c < n; ++c) {
            if (a.at(t, c).is_zero()) continue;
            Nat q = Nat::mulmod(shift_down(a.at(t, c), best_v), uinv, mod);
            for (int r = t; r < n; ++r)
                a.at(r, c) = Nat::submod(a.at(r, c), Nat::mulmod(q, a.at(r, t), mod), mod);
        }
        out.push_back(best_v);
    }
    for (; t < n; ++t) out.push_back(n_prec);
    std::sort(out.begin(), out.end());
    return out;
}

/// Count how many elementary divisors certifiably grow between the two
/// tables (compared sorted-descending, the shorter padded with zeros).
/// A divisor saturated at the precision in the *first* table cannot be
/// compared and is counted as ambiguous.
struct DivisorGrowth {
    int grown = 0;
    int ambiguous = 0;
};

inline DivisorGrowth divisor_growth(std::vector<int> first, std::vector<int> second, int n_prec) {
    std::sort(first.rbegin(), first.rend());
    std::sort(second.rbegin(), second.rend());
    std::size_t n = std::max(first.size(), second.size());
    first.resize(n, 0);
    second.resize(n, 0);
    DivisorGrowth g;
    for (std::size_t i = 0; i < n; ++i) {
        if (first[i] >= n_prec)
            ++g.ambiguous;
        else if (second[i] > first[i])
            ++g.grown;
        else if (second[i] < first[i])
            ++g.ambiguous; // shrinkage never happens for nested truncations
    }
    return g;
}

/// Full pipeline result.
struct ThhReport {
    ExtensionSpec spec;
    int truncation_m = 0;    // the smaller truncation M (the run doubles it)
    int precision_used = 0;  // precision of the divisor tables
    std::optional<TruncatedSeries> unit;
    int profile_v = 0;
    int profile_k = 0;
    std::vector<int> divisors_m, divisors_2m;
    int detval_m = 0, detval_2m = 0;
    int rank = 0;
    std::string homotopy_even, homotopy_odd;
};

/// Run the pipeline at truncations M and 2M and read the torsion rank off
/// the strictly growing elementary divisors.  The precision is widened
/// beyond the requested one when the divisor chains would saturate.
inline ThhReport torsion_rank(const ExtensionSpec& spec_in) {
    ExtensionSpec s = normalized(spec_in);
    std::int64_t p = s.prime;
    int m = s.truncation;

    // probe solve at the requested precision to learn the unit profile
    TargetData probe_td = detail::build_target_at(s, m, s.precision + 2);
    UnitSeries probe = solve_unit(probe_td.target, probe_td.omega, probe_td.line);
    NormalForm nf = normal_form(probe);
    if (nf.v != 1)
        throw indeterminate_error("torsion_rank: unit constant term is not 1 + p*(unit)");

    int n_run = std::max(s.precision, (m + nf.k - 1) / nf.k + 2);

    ThhReport rep;
    rep.spec = s;
    rep.truncation_m = m;
    rep.precision_used = n_run;

    for (int pass = 0; pass < 2; ++pass) {
        int trunc = (pass == 0) ? m : 2 * m;
        TargetData td = detail::build_target_at(s, trunc, n_run + 2);
        UnitSeries u = solve_unit(td.target, td.omega, td.line);
        NormalForm nfi = normal_form(u);
        if (nfi.v != nf.v || nfi.k != nf.k)
            throw indeterminate_error("torsion_rank: unit profile changed between truncations");
        std::vector<int> divs = smith_divisors(toeplitz_matrix(u, trunc, n_run));
        // the matrix is triangular with diagonal c_0 - 1, so the determinant
        // valuation is exactly trunc * v
        int detval = trunc * nfi.v;
        if (pass == 0) {
            std::vector<PadicInt> capped;
            for (const auto& c : u.body().coefficients())
                capped.push_back(reduce_to(c, std::min(c.precision(), n_run)));
            rep.unit = TruncatedSeries(p, trunc, std::move(capped));
            rep.profile_v = nfi.v;
            rep.profile_k = nfi.k;
            rep.divisors_m = divs;
            rep.detval_m = detval;
        } else {
            rep.divisors_2m = divs;
            rep.detval_2m = detval;
        }
    }

    DivisorGrowth g = divisor_growth(rep.divisors_m, rep.divisors_2m, n_run);
    if (g.ambiguous != 0 || g.grown != nf.k)
        throw indeterminate_error(
            "torsion_rank: divisor growth (" + std::to_string(g.grown) + " grown, " +
            std::to_string(g.ambiguous) + " ambiguous) disagrees with the unit profile k = " +
            std::to_string(nf.k));
    rep.rank = g.grown;
    if (rep.rank < 1 || rep.rank > (int)p - 1)
        throw indeterminate_error("torsion_rank: rank outside 1..p-1");
    rep.homotopy_even = "(Z/" + std::to_string(p) + "^inf)^" + std::to_string(rep.rank);
    rep.homotopy_odd = "0";
    return rep;
}

} // namespace thhk
