#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "thhk/bigint.hpp"
#include "thhk/errors.hpp"

namespace thhk {

/// Exact arithmetic in Z_p at fixed finite precision.
///
/// A PadicInt is a residue class modulo p^N together with the precision N it
/// carries: the value is known modulo p^N and nothing more.  Binary
/// operations reduce to the smaller operand precision; operations that divide
/// by p lower the carried precision explicitly.  Values are immutable.

inline bool is_odd_prime(std::int64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace detail {

inline const Nat& prime_power(std::int64_t p, int n) {
    // capacity 256 keeps references stable; moduli are capped one limb below
    // the Nat width so modular sums can never carry out
    thread_local std::map<std::int64_t, std::vector<Nat>> cache;
    auto& v = cache[p];
    if (v.empty()) {
        v.reserve(256);
        v.push_back(Nat(1));
    }
    if (n >= 256) throw precision_error("precision beyond the supported range");
    while ((int)v.size() <= n) {
        try {
            Nat next = Nat::mul(v.back(), Nat((std::uint64_t)p));
            if (!next.fits_limbs(Nat::limbs - 1)) throw std::overflow_error("cap");
            v.push_back(next);
        } catch (const std::overflow_error&) {
            throw precision_error("p^" + std::to_string(v.size()) +
                                  " exceeds the supported integer width at p = " +
                                  std::to_string(p));
        }
    }
    return v[n];
}

inline std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (std::uint64_t)(((unsigned __int128)r * b) % m);
        b = (std::uint64_t)(((unsigned __int128)b * b) % m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

class PadicInt {
public:
    /// Residue r mod p^N.  p must be an odd prime; the prime 2 is rejected
    /// because the convergence facts the exp/log layer relies on fail there.
    PadicInt(std::int64_t prime, int precision, Nat residue)
        : prime_(prime), precision_(precision) {
        if (!is_odd_prime(prime))
            throw std::invalid_argument("PadicInt: prime must be an odd prime >= 3");
        if (prime >= (std::int64_t(1) << 31))
            throw std::invalid_argument("PadicInt: prime too large");
        if (precision < 1)
            throw std::invalid_argument("PadicInt: precision must be >= 1");
        const Nat& m = detail::prime_power(prime_, precision_);
        if (Nat::cmp(residue, m) >= 0)
            residue = Nat::divmod(residue, m).second;
        residue_ = residue;
    }

    static PadicInt from_int(std::int64_t prime, int precision, std::int64_t value) {
        bool negative = value < 0;
        std::uint64_t mag = negative ? (std::uint64_t)(-(value + 1)) + 1 : (std::uint64_t)value;
        PadicInt r(prime, precision, Nat(mag));
        return negative ? neg_impl(r) : r;
    }

    static PadicInt zero(std::int64_t prime, int precision) {
        return PadicInt(prime, precision, Nat());
    }
    static PadicInt one(std::int64_t prime, int precision) {
        return PadicInt(prime, precision, Nat(1));
    }

    std::int64_t prime() const { return prime_; }
    int precision() const { return precision_; }
    const Nat& residue() const { return residue_; }
    const Nat& modulus() const { return detail::prime_power(prime_, precision_); }

    /// Largest v <= N with p^v dividing the residue.  A residue of 0 reports
    /// valuation N; see is_zero_at_precision().
    int valuation() const {
        if (residue_.is_zero()) return precision_;
        int v = 0;
        Nat cur = residue_;
        while (v < precision_) {
            auto [q, rem] = Nat::divmod_small(cur, (std::uint32_t)prime_);
            if (rem != 0) break;
            cur = q;
            ++v;
        }
        return v;
    }

    /// True when the value is indistinguishable from zero at this precision.
    /// This is weaker than exact vanishing.
    bool is_zero_at_precision() const { return residue_.is_zero(); }

    bool is_unit() const { return !residue_.is_zero() && valuation() == 0; }

    std::uint64_t residue_u64() const {
        if (!residue_.fits_u64())
            throw std::overflow_error("PadicInt: residue does not fit in 64 bits");
        return residue_.low64();
    }

private:
    std::int64_t prime_;
    int precision_;
    Nat residue_;

    static PadicInt neg_impl(const PadicInt& a) {
        if (a.residue_.is_zero()) return a;
        return PadicInt(a.prime_, a.precision_, Nat::sub(a.modulus(), a.residue_));
    }

    friend PadicInt neg(const PadicInt&);
};

namespace detail {

inline void require_same_prime(const PadicInt& a, const PadicInt& b) {
    if (a.prime() != b.prime())
        throw std::invalid_argument("PadicInt: prime mismatch");
}

} // namespace detail

/// Reduce to a possibly lower precision.
inline PadicInt reduce_to(const PadicInt& a, int precision) {
    if (precision > a.precision())
        throw precision_error("reduce_to: cannot raise precision");
    if (precision == a.precision()) return a;
    return PadicInt(a.prime(), precision, a.residue());
}

namespace detail {
// Reinterpret the residue at a higher modulus.  This claims digits the value
// does not carry, so it is only for internal algorithms whose output
// precision is justified separately.
inline PadicInt assume_precision(const PadicInt& a, int precision) {
    if (precision <= a.precision()) return reduce_to(a, precision);
    return PadicInt(a.prime(), precision, a.residue());
}
} // namespace detail

inline PadicInt add(const PadicInt& a, const PadicInt& b) {
    detail::require_same_prime(a, b);
    int n = std::min(a.precision(), b.precision());
    PadicInt x = reduce_to(a, n), y = reduce_to(b, n);
    return PadicInt(a.prime(), n, Nat::addmod(x.residue(), y.residue(), x.modulus()));
}

inline PadicInt sub(const PadicInt& a, const PadicInt& b) {
    detail::require_same_prime(a, b);
    int n = std::min(a.precision(), b.precision());
    PadicInt x = reduce_to(a, n), y = reduce_to(b, n);
    return PadicInt(a.prime(), n, Nat::submod(x.residue(), y.residue(), x.modulus()));
}

inline PadicInt mul(const PadicInt& a, const PadicInt& b) {
    detail::require_same_prime(a, b);
    int n = std::min(a.precision(), b.precision());
    PadicInt x = reduce_to(a, n), y = reduce_to(b, n);
    return PadicInt(a.prime(), n, Nat::mulmod(x.residue(), y.residue(), x.modulus()));
}

inline PadicInt neg(const PadicInt& a) { return PadicInt::neg_impl(a); }

inline PadicInt operator+(const PadicInt& a, const PadicInt& b) { return add(a, b); }
inline PadicInt operator-(const PadicInt& a, const PadicInt& b) { return sub(a, b); }
inline PadicInt operator*(const PadicInt& a, const PadicInt& b) { return mul(a, b); }
inline PadicInt operator-(const PadicInt& a) { return neg(a); }

/// Equality of the residues at the common (minimum) precision.
inline bool congruent(const PadicInt& a, const PadicInt& b) {
    detail::require_same_prime(a, b);
    int n = std::min(a.precision(), b.precision());
    return reduce_to(a, n).residue() == reduce_to(b, n).residue();
}

inline bool operator==(const PadicInt& a, const PadicInt& b) { return congruent(a, b); }
inline bool operator!=(const PadicInt& a, const PadicInt& b) { return !congruent(a, b); }

inline PadicInt pow_int(const PadicInt& a, std::uint64_t e) {
    PadicInt r = PadicInt::one(a.prime(), a.precision());
    PadicInt b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

/// Multiplicative inverse of a unit, by Newton lifting of the inverse mod p.
inline PadicInt invert(const PadicInt& a) {
    if (!a.is_unit())
        throw std::domain_error("invert: argument is not a unit");
    std::int64_t p = a.prime();
    int n = a.precision();
    std::uint64_t a0 = Nat::divmod_small(a.residue(), (std::uint32_t)p).second;
    Nat x(detail::pow_mod_u64(a0, (std::uint64_t)(p - 2), (std::uint64_t)p));
    int k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        const Nat& m = detail::prime_power(p, k);
        Nat ar = Nat::cmp(a.residue(), m) >= 0 ? Nat::divmod(a.residue(), m).second
                                               : a.residue();
        Nat ax = Nat::mulmod(ar, x, m);
        Nat two_minus = Nat::submod(Nat(2), ax, m);
        x = Nat::mulmod(x, two_minus, m);
    }
    return PadicInt(p, n, x);
}

/// Exact division by p.  Requires valuation >= 1; lowers the precision by 1.
inline PadicInt divide_by_p(const PadicInt& a) {
    if (a.precision() < 2)
        throw precision_error("divide_by_p: no digits would remain");
    auto [q, rem] = Nat::divmod_small(a.residue(), (std::uint32_t)a.prime());
    if (rem != 0)
        throw std::domain_error("divide_by_p: residue not divisible by p");
    return PadicInt(a.prime(), a.precision() - 1, q);
}

/// Teichmueller representative: the unique (p-1)st root of unity congruent
/// to a mod p, computed as the limit of a^(p^k).
inline PadicInt teichmuller(std::int64_t prime, int precision, std::int64_t a) {
    if (!is_odd_prime(prime))
        throw std::invalid_argument("teichmuller: prime must be an odd prime");
    std::int64_t a0 = a % prime;
    if (a0 < 0) a0 += prime;
    if (a0 == 0)
        throw std::domain_error("teichmuller: residue divisible by p");
    PadicInt t = PadicInt::from_int(prime, precision, a0);
    for (int i = 0; i < precision; ++i)
        t = pow_int(t, (std::uint64_t)prime);
    if (!congruent(pow_int(t, (std::uint64_t)(prime - 1)), PadicInt::one(prime, precision)))
        throw std::logic_error("teichmuller: lift failed");
    return t;
}

namespace detail {

inline int factorial_valuation(std::int64_t n, std::int64_t p) {
    int v = 0;
    while (n) {
        n /= p;
        v += (int)n;
    }
    return v;
}

inline int int_valuation(std::int64_t n, std::int64_t p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// inverse of a small positive integer coprime to p, mod p^n
inline PadicInt invert_small(std::int64_t value, std::int64_t p, int n) {
    return invert(PadicInt::from_int(p, n, value));
}

// largest e with p^e <= n (so an upper bound for v_p(n), monotone in n)
inline int floor_log(std::int64_t n, std::int64_t p) {
    int e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

} // namespace detail

/// log of a 1-unit: sum (-1)^(n+1) (u-1)^n / n.  The terms are evaluated at a
/// lifted working modulus so the divisions by n cost nothing; the result is
/// correct at the full input precision because d log(u)/du is a unit.
inline PadicInt log_1unit(const PadicInt& u) {
    std::int64_t p = u.prime();
    int n_prec = u.precision();
    PadicInt w = sub(u, PadicInt::one(p, n_prec));
    if (w.is_zero_at_precision()) return PadicInt::zero(p, n_prec);
    int vw = w.valuation();
    if (vw < 1)
        throw std::domain_error("log_1unit: argument must be congruent to 1 mod p");

    // n*vw - floor_log(n) is monotone, so the tail past n_stop vanishes mod p^N
    std::int64_t n_stop = 1;
    while (n_stop * vw - detail::floor_log(n_stop, p) < n_prec) ++n_stop;
    int work = n_prec + detail::floor_log(n_stop, p);
    const Nat& m = detail::prime_power(p, work);
    Nat wlift = w.residue();
    Nat power = wlift;
    Nat acc;
    for (std::int64_t n = 1; n <= n_stop; ++n) {
        Nat term = power;
        int k = detail::int_valuation(n, p);
        std::int64_t unit_part = n;
        for (int i = 0; i < k; ++i) {
            term = Nat::divmod_small(term, (std::uint32_t)p).first;
            unit_part /= p;
        }
        if (unit_part != 1)
            term = Nat::mulmod(term, detail::invert_small(unit_part, p, work).residue(), m);
        acc = (n % 2 == 1) ? Nat::addmod(acc, term, m) : Nat::submod(acc, term, m);
        if (n < n_stop) power = Nat::mulmod(power, wlift, m);
    }
    return PadicInt(p, n_prec, acc);
}

/// exp of a value of valuation >= 1: sum z^n / n!, with the n! divisions
/// absorbed by a lifted working modulus.  Inverse to log_1unit at the carried
/// precision.
inline PadicInt exp_padic(const PadicInt& z) {
    std::int64_t p = z.prime();
    int n_prec = z.precision();
    if (z.is_zero_at_precision()) return PadicInt::one(p, n_prec);
    int vz = z.valuation();
    if (vz < 1)
        throw std::domain_error("exp_padic: argument must have valuation >= 1");

    // v_p(n!) <= (n-1)/(p-1), and n*vz - (n-1)/(p-1) is increasing, so this
    // cutoff also bounds every later term below p^N
    std::int64_t n_stop = 1;
    while (n_stop * vz * (p - 1) - (n_stop - 1) < (std::int64_t)n_prec * (p - 1)) ++n_stop;
    int work = n_prec + detail::factorial_valuation(n_stop, p);
    const Nat& m = detail::prime_power(p, work);
    Nat zlift = z.residue();
    Nat term(1), acc(1);
    for (std::int64_t n = 1; n <= n_stop; ++n) {
        term = Nat::mulmod(term, zlift, m);
        int k = detail::int_valuation(n, p);
        std::int64_t unit_part = n;
        for (int i = 0; i < k; ++i) {
            term = Nat::divmod_small(term, (std::uint32_t)p).first;
            unit_part /= p;
        }
        if (unit_part != 1)
            term = Nat::mulmod(term, detail::invert_small(unit_part, p, work).residue(), m);
        acc = Nat::addmod(acc, term, m);
    }
    return PadicInt(p, n_prec, acc);
}

} // namespace thhk
