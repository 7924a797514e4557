#pragma once

// Shared helpers for the test suites: a deterministic generator and a few
// tiny reference implementations used as independent oracles.

#include <cstdint>
#include <numeric>
#include <vector>

#include "thhk/thhk.hpp"

namespace testsupport {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline thhk::PadicInt random_padic(Rng& rng, std::int64_t p, int n) {
    return thhk::PadicInt(p, n, thhk::Nat(rng.below(pow_u64((std::uint64_t)p, n))));
}

inline thhk::PadicInt random_unit(Rng& rng, std::int64_t p, int n) {
    while (true) {
        thhk::PadicInt a = random_padic(rng, p, n);
        if (a.is_unit()) return a;
    }
}

inline thhk::TruncatedSeries random_series(Rng& rng, std::int64_t p, int n, int m) {
    std::vector<thhk::PadicInt> c;
    for (int i = 0; i < m; ++i) c.push_back(random_padic(rng, p, n));
    return thhk::TruncatedSeries(p, m, std::move(c));
}

// extended Euclid on int64, used as an independent inverse oracle
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    std::int64_t x1, y1;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t x, y;
    std::int64_t g = ext_gcd(((a % m) + m) % m, m, x, y);
    if (g != 1) throw std::runtime_error("inverse_mod: not invertible");
    return ((x % m) + m) % m;
}

// partial sum of log(1+w) = sum (-1)^(n+1) w^n / n as an exact rational
// reduced mod p^N; valid when every contributing term is p-integral
inline std::int64_t log_partial_sum_mod(std::int64_t w, std::int64_t p, int n_prec) {
    std::int64_t mod = (std::int64_t)pow_u64((std::uint64_t)p, n_prec);
    std::int64_t acc = 0;
    // terms up to n = 2*N*p are far beyond the cutoff for small test sizes
    for (int n = 1; n <= 2 * n_prec * (int)p; ++n) {
        // w^n / n = p^(vn - vd) * (num / den) with den coprime to p
        std::int64_t vn = 0, num = 1;
        for (int i = 0; i < n; ++i) {
            std::int64_t f = w;
            while (f % p == 0 && f != 0) {
                f /= p;
                ++vn;
            }
            num = (num * (((f % mod) + mod) % mod)) % mod;
        }
        std::int64_t den = n, vd = 0;
        while (den % p == 0) {
            den /= p;
            ++vd;
        }
        if (vn - vd >= n_prec) continue;
        std::int64_t term = num;
        for (int i = 0; i < vn - vd; ++i) term = (term * p) % mod;
        term = (term * inverse_mod(den, mod)) % mod;
        acc = (acc + (n % 2 == 1 ? term : mod - term)) % mod;
    }
    return acc;
}

// reference Smith normal form over the integers for small matrices with
// entries that stay comfortably inside int64
inline std::vector<std::int64_t> reference_snf(std::vector<std::vector<std::int64_t>> a) {
    int n = (int)a.size();
    std::vector<std::int64_t> out;
    int t = 0;
    while (t < n) {
        int br = -1, bc = -1;
        std::int64_t best = 0;
        for (int r = t; r < n; ++r)
            for (int c = t; c < n; ++c)
                if (a[r][c] != 0 && (best == 0 || std::abs(a[r][c]) < best)) {
                    best = std::abs(a[r][c]);
                    br = r;
                    bc = c;
                }
        if (br < 0) break;
        std::swap(a[t], a[br]);
        for (int r = 0; r < n; ++r) std::swap(a[r][t], a[r][bc]);
        bool clean = true;
        for (int r = t + 1; r < n; ++r) {
            std::int64_t q = a[r][t] / a[t][t];
            for (int c = t; c < n; ++c) a[r][c] -= q * a[t][c];
            if (a[r][t] != 0) clean = false;
        }
        for (int c = t + 1; c < n; ++c) {
            std::int64_t q = a[t][c] / a[t][t];
            for (int r = t; r < n; ++r) a[r][c] -= q * a[r][t];
            if (a[t][c] != 0) clean = false;
        }
        if (clean) {
            out.push_back(std::abs(a[t][t]));
            ++t;
        }
    }
    while ((int)out.size() < n) out.push_back(0);
    return out;
}

} // namespace testsupport
