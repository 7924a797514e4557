#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thhk {

// Fixed-width unsigned integer on little-endian 64-bit limbs.  Sized so that
// every modulus p^N the engine works with fits, with double width available
// for intermediate products.
class Nat {
public:
    static constexpr int limbs = 6;

    constexpr Nat() = default;
    explicit constexpr Nat(std::uint64_t v) : w_{} { w_[0] = v; }

    bool is_zero() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }

    bool fits_u64() const {
        for (int i = 1; i < limbs; ++i)
            if (w_[i]) return false;
        return true;
    }

    bool fits_limbs(int k) const {
        for (int i = k; i < limbs; ++i)
            if (w_[i]) return false;
        return true;
    }

    std::uint64_t low64() const { return w_[0]; }

    static int cmp(const Nat& a, const Nat& b) {
        for (int i = limbs - 1; i >= 0; --i)
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i] ? -1 : 1;
        return 0;
    }

    friend bool operator==(const Nat& a, const Nat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Nat& a, const Nat& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Nat& a, const Nat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Nat& a, const Nat& b) { return cmp(a, b) <= 0; }

    static Nat add(const Nat& a, const Nat& b) {
        Nat r;
        unsigned __int128 carry = 0;
        for (int i = 0; i < limbs; ++i) {
            unsigned __int128 s = (unsigned __int128)a.w_[i] + b.w_[i] + carry;
            r.w_[i] = (std::uint64_t)s;
            carry = s >> 64;
        }
        if (carry) throw std::overflow_error("Nat: add overflow");
        return r;
    }

    // requires a >= b
    static Nat sub(const Nat& a, const Nat& b) {
        Nat r;
        std::int64_t borrow = 0;
        for (int i = 0; i < limbs; ++i) {
            __int128 d = (__int128)a.w_[i] - b.w_[i] - borrow;
            if (d < 0) {
                d += ((__int128)1 << 64);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r.w_[i] = (std::uint64_t)d;
        }
        if (borrow) throw std::invalid_argument("Nat: sub underflow");
        return r;
    }

    static Nat mul(const Nat& a, const Nat& b) {
        std::array<std::uint64_t, 2 * limbs> t{};
        mul_full(a, b, t);
        for (int i = limbs; i < 2 * limbs; ++i)
            if (t[i]) throw std::overflow_error("Nat: mul overflow");
        Nat r;
        for (int i = 0; i < limbs; ++i) r.w_[i] = t[i];
        return r;
    }

    // (a * b) mod m, assuming a < m and b < m.
    static Nat mulmod(const Nat& a, const Nat& b, const Nat& m) {
        if (m.fits_u64()) {
            unsigned __int128 p = (unsigned __int128)a.w_[0] * b.w_[0];
            return Nat((std::uint64_t)(p % m.w_[0]));
        }
        std::array<std::uint64_t, 2 * limbs> t{};
        mul_full(a, b, t);
        std::vector<std::uint32_t> u = to_u32(t.data(), 2 * limbs);
        std::vector<std::uint32_t> v = to_u32(m.w_.data(), limbs);
        std::vector<std::uint32_t> q, r;
        div_u32(u, v, q, r);
        return from_u32(r);
    }

    static Nat addmod(const Nat& a, const Nat& b, const Nat& m) {
        // a,b < m < 2^383 so the sum cannot overflow the limb array
        Nat s = add(a, b);
        if (cmp(s, m) >= 0) s = sub(s, m);
        return s;
    }

    static Nat submod(const Nat& a, const Nat& b, const Nat& m) {
        if (cmp(a, b) >= 0) return sub(a, b);
        return sub(add(a, m), b);
    }

    static std::pair<Nat, Nat> divmod(const Nat& a, const Nat& b) {
        if (b.is_zero()) throw std::domain_error("Nat: division by zero");
        if (cmp(a, b) < 0) return {Nat(), a};
        std::vector<std::uint32_t> u = to_u32(a.w_.data(), limbs);
        std::vector<std::uint32_t> v = to_u32(b.w_.data(), limbs);
        std::vector<std::uint32_t> q, r;
        div_u32(u, v, q, r);
        return {from_u32(q), from_u32(r)};
    }

    // divide by a small value, returning quotient and remainder
    static std::pair<Nat, std::uint32_t> divmod_small(const Nat& a, std::uint32_t d) {
        if (d == 0) throw std::domain_error("Nat: division by zero");
        Nat q;
        std::uint64_t rem = 0;
        for (int i = limbs - 1; i >= 0; --i) {
            unsigned __int128 cur = ((unsigned __int128)rem << 64) | a.w_[i];
            q.w_[i] = (std::uint64_t)(cur / d);
            rem = (std::uint64_t)(cur % d);
        }
        return {q, (std::uint32_t)rem};
    }

    // exact base^exp, throws std::overflow_error when it leaves the limb array
    static Nat pow_u64(std::uint64_t base, int exp) {
        Nat r(1), b(base);
        while (exp > 0) {
            if (exp & 1) r = mul(r, b);
            exp >>= 1;
            if (exp) b = mul(b, b);
        }
        return r;
    }

    static Nat from_decimal(std::string_view s) {
        Nat r;
        if (s.empty()) throw std::invalid_argument("Nat: empty decimal string");
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("Nat: bad decimal digit");
            r = add(mul(r, Nat(10)), Nat((std::uint64_t)(c - '0')));
        }
        return r;
    }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        Nat cur = *this;
        std::string out;
        while (!cur.is_zero()) {
            auto [q, rem] = divmod_small(cur, 1000000000u);
            cur = q;
            std::string grp = std::to_string(rem);
            if (!cur.is_zero())
                grp = std::string(9 - grp.size(), '0') + grp;
            out = grp + out;
        }
        return out;
    }

private:
    std::array<std::uint64_t, limbs> w_{};

    static void mul_full(const Nat& a, const Nat& b, std::array<std::uint64_t, 2 * limbs>& t) {
        for (int i = 0; i < limbs; ++i) {
            unsigned __int128 carry = 0;
            for (int j = 0; j < limbs; ++j) {
                unsigned __int128 cur = (unsigned __int128)a.w_[i] * b.w_[j] + t[i + j] + carry;
                t[i + j] = (std::uint64_t)cur;
                carry = cur >> 64;
            }
            t[i + limbs] = (std::uint64_t)carry;
        }
    }

    static std::vector<std::uint32_t> to_u32(const std::uint64_t* w, int n) {
        std::vector<std::uint32_t> out;
        out.reserve(2 * n);
        for (int i = 0; i < n; ++i) {
            out.push_back((std::uint32_t)w[i]);
            out.push_back((std::uint32_t)(w[i] >> 32));
        }
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        return out;
    }

    static Nat from_u32(const std::vector<std::uint32_t>& d) {
        Nat r;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i / 2 >= (std::size_t)limbs) {
                if (d[i]) throw std::overflow_error("Nat: value too wide");
                continue;
            }
            r.w_[i / 2] |= (std::uint64_t)d[i] << (32 * (i % 2));
        }
        return r;
    }

    // Knuth Algorithm D on 32-bit digits.
    static void div_u32(std::vector<std::uint32_t> u, std::vector<std::uint32_t> v,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        while (u.size() > 1 && u.back() == 0) u.pop_back();
        while (v.size() > 1 && v.back() == 0) v.pop_back();
        int m = (int)u.size(), n = (int)v.size();
        if (n == 1 && v[0] == 0) throw std::domain_error("Nat: division by zero");
        if (m < n || (m == n && std::lexicographical_compare(u.rbegin(), u.rend(),
                                                             v.rbegin(), v.rend()))) {
            q.assign(1, 0);
            r = u;
            return;
        }
        if (n == 1) {
            q.assign(m, 0);
            std::uint64_t rem = 0;
            for (int i = m - 1; i >= 0; --i) {
                std::uint64_t cur = (rem << 32) | u[i];
                q[i] = (std::uint32_t)(cur / v[0]);
                rem = cur % v[0];
            }
            r.assign(1, (std::uint32_t)rem);
            return;
        }
        const std::uint64_t B = 1ull << 32;
        q.assign(m - n + 1, 0);
        int s = 0;
        {
            std::uint32_t top = v[n - 1];
            while (!(top & 0x80000000u)) { top <<= 1; ++s; }
        }
        std::vector<std::uint32_t> vn(n), un(m + 1);
        if (s == 0) {
            for (int i = 0; i < n; ++i) vn[i] = v[i];
            un[m] = 0;
            for (int i = 0; i < m; ++i) un[i] = u[i];
        } else {
            for (int i = n - 1; i > 0; --i)
                vn[i] = (v[i] << s) | (std::uint32_t)((std::uint64_t)v[i - 1] >> (32 - s));
            vn[0] = v[0] << s;
            un[m] = (std::uint32_t)((std::uint64_t)u[m - 1] >> (32 - s));
            for (int i = m - 1; i > 0; --i)
                un[i] = (u[i] << s) | (std::uint32_t)((std::uint64_t)u[i - 1] >> (32 - s));
            un[0] = u[0] << s;
        }
        for (int j = m - n; j >= 0; --j) {
            std::uint64_t num = ((std::uint64_t)un[j + n] << 32) | un[j + n - 1];
            std::uint64_t qhat = num / vn[n - 1];
            std::uint64_t rhat = num % vn[n - 1];
            while (qhat >= B ||
                   qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= B) break;
            }
            std::int64_t k = 0, t = 0;
            for (int i = 0; i < n; ++i) {
                std::uint64_t pq = qhat * vn[i];
                t = (std::int64_t)(std::uint64_t)un[i + j] - k - (std::int64_t)(pq & 0xFFFFFFFFull);
                un[i + j] = (std::uint32_t)t;
                k = (std::int64_t)(pq >> 32) - (t >> 32);
            }
            t = (std::int64_t)(std::uint64_t)un[j + n] - k;
            un[j + n] = (std::uint32_t)t;
            q[j] = (std::uint32_t)qhat;
            if (t < 0) {
                --q[j];
                std::uint64_t carry = 0;
                for (int i = 0; i < n; ++i) {
                    std::uint64_t tt = (std::uint64_t)un[i + j] + vn[i] + carry;
                    un[i + j] = (std::uint32_t)tt;
                    carry = tt >> 32;
                }
                un[j + n] = (std::uint32_t)((std::uint64_t)un[j + n] + carry);
            }
        }
        r.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            if (s == 0)
                r[i] = un[i];
            else
                r[i] = (un[i] >> s) | (std::uint32_t)((std::uint64_t)un[i + 1] << (32 - s));
        }
    }
};

} // namespace thhk
