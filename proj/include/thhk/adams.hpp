#pragma once

#include "thhk/series.hpp"

namespace thhk {

/// A K-theory class of the infinite projective space with Bott weight:
/// weight m and body g represent beta^m * g(x), living in degree 2m.
class KClass {
public:
    KClass(int weight, TruncatedSeries body) : weight_(weight), body_(std::move(body)) {}

    int weight() const { return weight_; }
    const TruncatedSeries& body() const { return body_; }
    std::int64_t prime() const { return body_.prime(); }

private:
    int weight_;
    TruncatedSeries body_;
};

inline std::int64_t smallest_primitive_root(std::int64_t p) {
    // factor p-1, then test generators in increasing order
    std::vector<std::int64_t> fac;
    std::int64_t n = p - 1;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fac.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fac.push_back(n);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : fac) {
            if (detail::pow_mod_u64((std::uint64_t)g, (std::uint64_t)((p - 1) / q),
                                    (std::uint64_t)p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: none found");
}

/// Adams operation psi_a.  On the body it substitutes x -> 1 - (1-x)^a, and a
/// weight-m class picks up the factor a^{-m}.  A non-unit a (notably a = p)
/// is only meaningful on weight 0.
inline KClass adams(const PadicInt& a, const KClass& c) {
    if (a.is_zero_at_precision())
        throw std::domain_error("adams: operation index is zero at this precision");
    if (a.valuation() > 0 && c.weight() != 0)
        throw std::domain_error("adams: non-unit operation index requires weight 0");
    int m = c.body().truncation();
    TruncatedSeries one = TruncatedSeries::constant(
        PadicInt::one(a.prime(), a.precision()), m);
    TruncatedSeries subst = series_sub(one, binomial_one_minus_pow(a, m));
    TruncatedSeries body = compose(c.body(), subst);
    int w = c.weight();
    if (w > 0) body = scale(body, pow_int(invert(a), (std::uint64_t)w));
    if (w < 0) body = scale(body, pow_int(a, (std::uint64_t)(-w)));
    return KClass(c.weight(), body);
}

/// Adams-summand projector
///   pi_k = (1/(p-1)) * sum_i zeta^{-ik} psi_{zeta^i},
/// with zeta the Teichmueller lift of the smallest primitive root mod p.
/// The output does not depend on which primitive root is chosen.
inline KClass projector(int k, const KClass& c) {
    std::int64_t p = c.prime();
    if (k < 0 || k > p - 2)
        throw std::invalid_argument("projector: index must lie in 0..p-2");
    int n_prec = c.body().min_precision();
    PadicInt zeta = teichmuller(p, n_prec, smallest_primitive_root(p));
    PadicInt zeta_mk = pow_int(invert(zeta), (std::uint64_t)k);
    PadicInt zpow = PadicInt::one(p, n_prec);   // zeta^i
    PadicInt wpow = PadicInt::one(p, n_prec);   // zeta^{-ik}
    TruncatedSeries acc = c.body();             // i = 0 term
    for (int i = 1; i <= p - 2; ++i) {
        zpow = mul(zpow, zeta);
        wpow = mul(wpow, zeta_mk);
        acc = series_add(acc, scale(adams(zpow, c).body(), wpow));
    }
    acc = scale(acc, detail::invert_small(p - 1, p, n_prec));
    return KClass(c.weight(), acc);
}

/// Transgression kappa(beta * g(x)) = g'(x) (1-x).  The derivative loses the
/// top coefficient, so the result is honest only mod x^(M-1) and is returned
/// at that truncation.
inline TruncatedSeries kappa(const KClass& c) {
    if (c.weight() != 1)
        throw std::domain_error("kappa: class must have weight 1");
    TruncatedSeries der = derivative(c.body());
    int m = der.truncation();
    TruncatedSeries one_minus_x = one_minus_x_pow_int(
        c.prime(), c.body().min_precision(), m, 1);
    return series_mul(der, one_minus_x);
}

/// Restriction to the 2-sphere, where x becomes the square-zero class
/// epsilon: returns (constant term, epsilon coefficient) of the body.
inline std::pair<PadicInt, PadicInt> restrict_to_s2(const KClass& c) {
    if (c.body().truncation() < 2)
        throw std::invalid_argument("restrict_to_s2: truncation must be >= 2");
    return {c.body().coeff(0), c.body().coeff(1)};
}

/// A unit 1 + k*eps in K^0(S^{2n}), eps^2 = 0, psi_a(eps) = a^n eps.
struct SphereUnit {
    int half_dimension; // n
    PadicInt k;
};

/// The logarithm -(1/p) log(psi_p(u)/u^p) evaluated in the dual-number model
/// of the 2n-sphere.  Acts as multiplication by 1 - p^(n-1); in particular it
/// vanishes for n = 1.
inline PadicInt sphere_log(const SphereUnit& s) {
    if (s.half_dimension < 1)
        throw std::invalid_argument("sphere_log: half dimension must be >= 1");
    std::int64_t p = s.k.prime();
    int n_prec = s.k.precision();
    // dual numbers (a, b) = a + b*eps
    auto dmul = [&](std::pair<PadicInt, PadicInt> x, std::pair<PadicInt, PadicInt> y) {
        return std::make_pair(mul(x.first, y.first),
                              add(mul(x.first, y.second), mul(x.second, y.first)));
    };
    std::pair<PadicInt, PadicInt> u{PadicInt::one(p, n_prec), s.k};
    std::pair<PadicInt, PadicInt> up{PadicInt::one(p, n_prec), PadicInt::zero(p, n_prec)};
    for (int i = 0; i < p; ++i) up = dmul(up, u);
    // psi_p(u) = 1 + p^n k eps
    PadicInt pn = pow_int(PadicInt::from_int(p, n_prec, p), (std::uint64_t)s.half_dimension);
    std::pair<PadicInt, PadicInt> psi{PadicInt::one(p, n_prec), mul(pn, s.k)};
    std::pair<PadicInt, PadicInt> up_inv{invert(up.first),
                                         neg(mul(up.second, pow_int(invert(up.first), 2)))};
    auto q = dmul(psi, up_inv);
    if (!congruent(q.first, PadicInt::one(p, n_prec)))
        throw std::logic_error("sphere_log: quotient has nontrivial scalar part");
    // log(1 + c eps) = c eps since eps^2 = 0
    return neg(divide_by_p(q.second));
}

/// The degree-0 logarithm: divide out the Teichmueller part, then apply
/// -(1/p) log(u^(1-p)).  Kills (p-1)st roots of unity and sends 1 + pk to
/// -k mod p.
inline PadicInt pi0_log(const PadicInt& u) {
    if (!u.is_unit())
        throw std::domain_error("pi0_log: argument must be a unit");
    std::int64_t p = u.prime();
    std::int64_t u0 = (std::int64_t)Nat::divmod_small(u.residue(), (std::uint32_t)p).second;
    PadicInt omega = teichmuller(p, u.precision(), u0);
    PadicInt one_unit = mul(u, invert(omega));
    PadicInt lg = log_1unit(one_unit);
    // -(1/p) * (1-p) * log = ((p-1)/p) * log
    return divide_by_p(mul(lg, PadicInt::from_int(p, lg.precision(), p - 1)));
}

/// alpha_p = pi0_log(1-p), the distinguished unit the degree-2 restriction of
/// every valid extension is measured against.
inline PadicInt alpha_p(std::int64_t p, int precision) {
    return pi0_log(PadicInt::from_int(p, precision + 1, 1 - p));
}

} // namespace thhk
