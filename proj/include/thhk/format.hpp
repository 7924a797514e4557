#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "thhk/series.hpp"

namespace thhk {

/// Canonical text form "r mod p^N".
inline std::string to_text(const PadicInt& a) {
    return a.residue().to_decimal() + " mod " + std::to_string(a.prime()) + "^" +
           std::to_string(a.precision());
}

namespace detail {

// symmetric representative string: residues above p^N/2 print negatively
inline std::string symmetric_string(const PadicInt& a) {
    Nat m = a.modulus();
    Nat half = Nat::divmod_small(m, 2).first;
    if (Nat::cmp(a.residue(), half) > 0)
        return "-" + Nat::sub(m, a.residue()).to_decimal();
    return a.residue().to_decimal();
}

} // namespace detail

/// Text form "c0 + c1*x + c2*x^2 (mod p^N, x^M)" with signed coefficients
/// and zero terms omitted.
inline std::string to_text(const TruncatedSeries& f) {
    int n_prec = f.min_precision();
    TruncatedSeries g = reduce_to(f, n_prec);
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < g.truncation(); ++i) {
        if (g.coeff(i).is_zero_at_precision()) continue;
        std::string c = detail::symmetric_string(g.coeff(i));
        bool negative = !c.empty() && c[0] == '-';
        std::string mag = negative ? c.substr(1) : c;
        if (first) {
            out << (negative ? "-" : "");
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        if (i == 0) {
            out << mag;
        } else {
            if (mag != "1") out << mag << "*";
            out << "x";
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    out << " (mod " << f.prime() << "^" << n_prec << ", x^" << f.truncation() << ")";
    return out.str();
}

namespace detail {

// Recursive-descent parser for integer-coefficient polynomials in x with
// +, -, *, ^, parentheses and negative exponents on unit bases, e.g.
// "3*x^2 + x", "(1-x)^2", "(1-x)^-1".
class SeriesParser {
public:
    SeriesParser(std::string_view text, std::int64_t p, int precision, int truncation)
        : s_(text), p_(p), n_(precision), m_(truncation) {}

    TruncatedSeries parse() {
        TruncatedSeries r = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw std::invalid_argument("series parse error: trailing input at '" +
                                        std::string(s_.substr(pos_)) + "'");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::int64_t p_;
    int n_, m_;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    std::int64_t integer() {
        skip_ws();
        bool negative = eat('-');
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
            throw std::invalid_argument("series parse error: expected an integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            v = v * 10 + (s_[pos_] - '0');
            if (v < 0) throw std::invalid_argument("series parse error: integer overflow");
            ++pos_;
        }
        return negative ? -v : v;
    }

    TruncatedSeries expr() {
        TruncatedSeries acc = term();
        while (true) {
            if (eat('+'))
                acc = series_add(acc, term());
            else if (eat('-'))
                acc = series_sub(acc, term());
            else
                return acc;
        }
    }

    TruncatedSeries term() {
        TruncatedSeries acc = factor();
        while (eat('*')) acc = series_mul(acc, factor());
        return acc;
    }

    TruncatedSeries factor() {
        TruncatedSeries base = atom();
        if (eat('^')) {
            std::int64_t e = integer();
            if (e >= 0) return series_pow(base, (std::uint64_t)e);
            if (!base.coeff(0).is_unit())
                throw std::invalid_argument(
                    "series parse error: negative power of a non-unit series");
            return series_pow(invert_unit(base), (std::uint64_t)(-e));
        }
        return base;
    }

    TruncatedSeries atom() {
        skip_ws();
        if (eat('(')) {
            TruncatedSeries inner = expr();
            if (!eat(')')) throw std::invalid_argument("series parse error: missing ')'");
            return inner;
        }
        if (eat('-')) return series_neg(atom());
        char c = peek();
        if (c == 'x') {
            ++pos_;
            if (m_ < 2)
                throw std::invalid_argument("series parse error: x does not fit truncation 1");
            return TruncatedSeries::x(p_, n_, m_);
        }
        if (std::isdigit((unsigned char)c))
            return TruncatedSeries::constant(PadicInt::from_int(p_, n_, integer()), m_);
        throw std::invalid_argument("series parse error: unexpected character");
    }
};

} // namespace detail

inline TruncatedSeries parse_series(std::string_view text, std::int64_t p, int precision,
                                    int truncation) {
    return detail::SeriesParser(text, p, precision, truncation).parse();
}

} // namespace thhk
