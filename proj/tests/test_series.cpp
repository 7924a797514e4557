#include "doctest.h"

#include "support.hpp"

using namespace thhk;
using testsupport::Rng;

namespace {

TruncatedSeries geometric(std::int64_t p, int n, int m) {
    // 1 + x + x^2 + ...
    std::vector<PadicInt> c(m, PadicInt::one(p, n));
    return TruncatedSeries(p, m, std::move(c));
}

} // namespace

TEST_CASE("multiplication examples") {
    const std::int64_t p = 3;
    TruncatedSeries one_minus_x = one_minus_x_pow_int(p, 3, 5, 1);
    CHECK(congruent(series_mul(one_minus_x, geometric(p, 3, 5)),
                    TruncatedSeries::constant(PadicInt::one(p, 3), 5)));
    Rng rng(21);
    TruncatedSeries f = testsupport::random_series(rng, p, 3, 5);
    CHECK(congruent(series_mul(f, TruncatedSeries::constant(PadicInt::one(p, 3), 5)), f));

    TruncatedSeries one_plus_x =
        TruncatedSeries::constant(PadicInt::one(p, 2), 3).with_coeff(1, PadicInt::one(p, 2));
    TruncatedSeries sq = series_mul(one_plus_x, one_plus_x);
    CHECK(sq.coeff(0).residue() == Nat(1));
    CHECK(sq.coeff(1).residue() == Nat(2));
    CHECK(sq.coeff(2).residue() == Nat(1));
}

TEST_CASE("composition") {
    const std::int64_t p = 3;
    Rng rng(22);
    TruncatedSeries f = testsupport::random_series(rng, p, 3, 4);
    CHECK(congruent(compose(f, TruncatedSeries::x(p, 3, 4)), f));

    // (3x - 3x^2 + x^3)^2 = 9x^2 mod x^3, at three digits
    TruncatedSeries g = parse_series("3*x - 3*x^2", p, 3, 3);
    TruncatedSeries x2 = TruncatedSeries::monomial(PadicInt::one(p, 3), 2, 3);
    TruncatedSeries composed = compose(x2, g);
    CHECK(composed.coeff(0).is_zero_at_precision());
    CHECK(composed.coeff(1).is_zero_at_precision());
    CHECK(composed.coeff(2).residue() == Nat(9));

    TruncatedSeries one_plus_x = parse_series("1 + x", p, 3, 4);
    CHECK(congruent(compose(one_plus_x, TruncatedSeries::zero(p, 3, 4)),
                    TruncatedSeries::constant(PadicInt::one(p, 3), 4)));

    // associativity on substitutions with vanishing constant term
    for (int i = 0; i < 30; ++i) {
        TruncatedSeries a = testsupport::random_series(rng, 5, 3, 5);
        TruncatedSeries b = testsupport::random_series(rng, 5, 3, 5)
                                .with_coeff(0, PadicInt::zero(5, 3));
        TruncatedSeries c = testsupport::random_series(rng, 5, 3, 5)
                                .with_coeff(0, PadicInt::zero(5, 3));
        CHECK(congruent(compose(compose(a, b), c), compose(a, compose(b, c))));
    }
}

TEST_CASE("binomial series") {
    const std::int64_t p = 3;
    CHECK(congruent(binomial_one_minus_pow(PadicInt::one(p, 3), 4),
                    one_minus_x_pow_int(p, 3, 4, 1)));
    // a = -1 gives the geometric series; oracle: multiply back by 1-x
    TruncatedSeries inv = binomial_one_minus_pow(PadicInt::from_int(p, 3, -1), 4);
    CHECK(congruent(inv, geometric(p, 3, 4)));
    CHECK(congruent(series_mul(inv, one_minus_x_pow_int(p, 3, 4, 1)),
                    TruncatedSeries::constant(PadicInt::one(p, 3), 4)));

    // Frobenius: (1-x)^p = 1 - x^p mod p
    TruncatedSeries frob = binomial_one_minus_pow(PadicInt::from_int(p, 3, p), (int)p + 1);
    for (int j = 1; j < (int)p; ++j)
        CHECK(reduce_to(frob.coeff(j), 1).is_zero_at_precision());
    CHECK(congruent(reduce_to(frob.coeff((int)p), 1), PadicInt::from_int(p, 1, -1)));

    // precision loss at the x^p coefficient is exactly v_p(p!) = 1
    CHECK(frob.coeff((int)p).precision() == 2);
    CHECK(frob.coeff(1).precision() == 3);
    CHECK_THROWS_AS(binomial_one_minus_pow(PadicInt::one(p, 1), (int)p + 1), precision_error);

    Rng rng(23);
    for (std::int64_t q : {3, 5}) {
        for (int i = 0; i < 50; ++i) {
            PadicInt a = testsupport::random_padic(rng, q, 4);
            PadicInt b = testsupport::random_padic(rng, q, 4);
            TruncatedSeries lhs = binomial_one_minus_pow(add(a, b), (int)q + 2);
            TruncatedSeries rhs = series_mul(binomial_one_minus_pow(a, (int)q + 2),
                                             binomial_one_minus_pow(b, (int)q + 2));
            CHECK(congruent(lhs, rhs));
            TruncatedSeries prod = series_mul(binomial_one_minus_pow(a, (int)q + 2),
                                              binomial_one_minus_pow(neg(a), (int)q + 2));
            CHECK(congruent(prod, TruncatedSeries::constant(PadicInt::one(q, 4), (int)q + 2)));
        }
    }
}

TEST_CASE("derivative") {
    const std::int64_t p = 5;
    CHECK(derivative(TruncatedSeries::constant(PadicInt::one(p, 3), 4)).is_zero_at_precision());
    TruncatedSeries x3 = TruncatedSeries::monomial(PadicInt::one(p, 3), 3, 5);
    TruncatedSeries d = derivative(x3);
    CHECK(d.truncation() == 4);
    CHECK(d.coeff(2).residue() == Nat(3));
    CHECK(congruent(derivative(parse_series("1 + x + x^2", p, 3, 3)),
                    parse_series("1 + 2*x", p, 3, 2)));

    Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        TruncatedSeries f = testsupport::random_series(rng, p, 3, 6);
        TruncatedSeries g = testsupport::random_series(rng, p, 3, 6);
        TruncatedSeries lhs = derivative(series_mul(f, g));
        TruncatedSeries rhs = series_add(series_mul(derivative(f), restrict_truncation(g, 5)),
                                         series_mul(restrict_truncation(f, 5), derivative(g)));
        CHECK(congruent(lhs, rhs));
    }
}

TEST_CASE("invert_unit") {
    const std::int64_t p = 3;
    CHECK(congruent(invert_unit(TruncatedSeries::constant(PadicInt::one(p, 3), 4)),
                    TruncatedSeries::constant(PadicInt::one(p, 3), 4)));
    CHECK(congruent(invert_unit(one_minus_x_pow_int(p, 3, 4, 1)), geometric(p, 3, 4)));

    // frozen: (1+3x)^{-1} = 1 + 6x mod (9, x^3); multiply-back oracle below
    TruncatedSeries u = parse_series("1 + 3*x", p, 2, 3);
    TruncatedSeries v = invert_unit(u);
    CHECK(v.coeff(0).residue() == Nat(1));
    CHECK(v.coeff(1).residue() == Nat(6));
    CHECK(v.coeff(2).is_zero_at_precision());
    CHECK(congruent(series_mul(u, v), TruncatedSeries::constant(PadicInt::one(p, 2), 3)));

    CHECK_THROWS_AS(invert_unit(TruncatedSeries::x(p, 3, 4)), std::domain_error);
}

TEST_CASE("series exp and log") {
    const std::int64_t p = 3;
    CHECK(congruent(series_exp(TruncatedSeries::zero(p, 3, 4)),
                    TruncatedSeries::constant(PadicInt::one(p, 3), 4)));
    CHECK(series_log(TruncatedSeries::constant(PadicInt::one(p, 3), 4)).is_zero_at_precision());

    // exp(-3b(1-x^2)) = 1 - 3b + 3b x^2 mod (9, x^3)
    Rng rng(25);
    for (int i = 0; i < 20; ++i) {
        PadicInt b = testsupport::random_padic(rng, p, 2);
        TruncatedSeries arg = scale(parse_series("1 - x^2", p, 2, 3),
                                    mul(PadicInt::from_int(p, 2, -3), b));
        TruncatedSeries e = series_exp(arg);
        PadicInt three_b = mul(PadicInt::from_int(p, 2, 3), b);
        CHECK(congruent(e.coeff(0), sub(PadicInt::one(p, 2), three_b)));
        CHECK(e.coeff(1).is_zero_at_precision());
        CHECK(congruent(e.coeff(2), three_b));
    }

    // round trips
    for (std::int64_t q : {3, 5, 7}) {
        TruncatedSeries px = scale(TruncatedSeries::x(q, 4, (int)q), PadicInt::from_int(q, 4, q));
        CHECK(congruent(series_log(series_exp(px)), px));
        for (int i = 0; i < 20; ++i) {
            TruncatedSeries z = scale(testsupport::random_series(rng, q, 4, (int)q),
                                      PadicInt::from_int(q, 4, q));
            CHECK(congruent(series_log(series_exp(z)), z));
            TruncatedSeries u = series_add(
                TruncatedSeries::constant(PadicInt::one(q, 4), (int)q), z);
            CHECK(congruent(series_exp(series_log(u)), u));
        }
    }
    CHECK_THROWS_AS(series_log(parse_series("1 + x", p, 3, 3)), std::domain_error);
    CHECK_THROWS_AS(series_exp(parse_series("x", p, 3, 3)), std::domain_error);
}

TEST_CASE("truncation mixing takes the minimum") {
    Rng rng(26);
    TruncatedSeries a = testsupport::random_series(rng, 3, 3, 6);
    TruncatedSeries b = testsupport::random_series(rng, 3, 3, 4);
    CHECK(series_mul(a, b).truncation() == 4);
    CHECK(series_add(a, b).truncation() == 4);
}
