#include <gtest/gtest.h>

#include "ffc/random.hpp"

using namespace ffc;

namespace {

RingElem random_any(const SpecRef& s, Rng& rng) {
    std::bernoulli_distribution has_const(0.7);
    RingElem x = random_nilpotent(s, rng);
    if (has_const(rng))
        x += RingElem::constant(s, random_rational(rng));
    return x;
}

LaurentPoly random_laurent(const SpecRef& s, Rng& rng) {
    std::uniform_int_distribution<int> exp(-3, 3);
    LaurentPoly f(s);
    for (int i = 0; i < 3; ++i)
        f += LaurentPoly::monomial(random_any(s, rng), exp(rng));
    return f;
}

} // namespace

TEST(Ring, MultiplicationExamples) {
    auto s = make_spec(1, 2);
    auto one = RingElem::one(s);
    auto e = RingElem::var(s, 1);
    EXPECT_EQ((one + e) * (one - e), one - e * e);
    EXPECT_TRUE((e * (e * e)).is_zero());
    EXPECT_EQ(one * (one + e), one + e);
}

TEST(Ring, InverseExamples) {
    auto s = make_spec(1, 2);
    auto one = RingElem::one(s);
    auto e = RingElem::var(s, 1);
    EXPECT_EQ((one + e).inverse(), one - e + e * e);
    EXPECT_EQ(RingElem::constant(s, 2).inverse(), RingElem::constant(s, Rational(1, 2)));
    try {
        (void)e.inverse();
        FAIL() << "expected NotAUnit";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "NotAUnit");
    }
}

TEST(Ring, Printing) {
    auto s = make_spec(2, 3);
    auto e1 = RingElem::var(s, 1);
    auto e2 = RingElem::var(s, 2);
    EXPECT_EQ((RingElem::one(s) - Rational(1, 2) * e1 * e2).to_string(), "1 - 1/2*e1*e2");
    EXPECT_EQ(RingElem::zero(s).to_string(), "0");
}

TEST(Ring, InverseAndNilpotencyRandomized) {
    Rng rng(11);
    for (int m = 1; m <= 2; ++m)
        for (int N = 1; N <= 6; ++N) {
            auto s = make_spec(m, N);
            for (int trial = 0; trial < 20; ++trial) {
                RingElem a = random_unit(s, rng);
                EXPECT_EQ(a * a.inverse(), RingElem::one(s));
                RingElem x = random_nilpotent(s, rng);
                EXPECT_TRUE(x.pow(N + 1).is_zero());
                RingElem b = random_any(s, rng), c = random_any(s, rng);
                EXPECT_EQ(a * (b + c), a * b + a * c);
                EXPECT_EQ((a * b) * c, a * (b * c));
                EXPECT_EQ(a * b, b * a);
            }
        }
}

TEST(Ring, GenericParameters) {
    auto s = make_spec(1, 2, {"s"});
    auto p = RingElem::param(s, 0);
    auto e = RingElem::var(s, 1);
    EXPECT_TRUE(p.is_unit());
    EXPECT_FALSE((p + RingElem::one(s)).is_unit());
    EXPECT_EQ(p * p.inverse(), RingElem::one(s));
    EXPECT_EQ((p + e).inverse(), p.pow(-1) - e * p.pow(-2) + e * e * p.pow(-3));

    // s -> 3 + e
    auto base = make_spec(1, 2);
    auto v = RingElem::constant(base, 3) + RingElem::var(base, 1);
    auto img = (p.pow(2) + e).specialize(base, {{0, v}});
    auto eb = RingElem::var(base, 1);
    EXPECT_EQ(img, RingElem::constant(base, 9) + 7 * eb + eb * eb);
}

TEST(Ring, SpecMismatch) {
    auto a = RingElem::one(make_spec(1, 2));
    auto b = RingElem::one(make_spec(1, 3));
    try {
        (void)(a + b);
        FAIL() << "expected SpecMismatch";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "SpecMismatch");
    }
}

TEST(Laurent, SubstitutionExamples) {
    auto s = make_spec(1, 1);
    auto one = RingElem::one(s);
    auto e = RingElem::var(s, 1);
    auto u = LaurentPoly::u(s);
    auto uinv = LaurentPoly::monomial(one, -1);

    EXPECT_EQ(substitute(uinv, LaurentPoly::monomial(RingElem::constant(s, 2), 1)),
              LaurentPoly::monomial(RingElem::constant(s, Rational(1, 2)), -1));
    EXPECT_EQ(substitute(uinv, u + LaurentPoly::constant(e)), uinv - LaurentPoly::monomial(e, -2));
    Rng rng(3);
    auto f = random_laurent(s, rng);
    EXPECT_EQ(substitute(f, u), f);
}

TEST(Laurent, NotSubstitutable) {
    auto s = make_spec(1, 2);
    auto u = LaurentPoly::u(s);
    auto g = u + LaurentPoly::constant(RingElem::one(s));
    try {
        (void)substitute(u, g);
        FAIL() << "expected NotSubstitutable";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "NotSubstitutable");
    }
}

TEST(Laurent, CompositionalInverseExamples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    auto u = LaurentPoly::u(s);

    EXPECT_EQ(compositional_inverse(u + LaurentPoly::constant(e)), u - LaurentPoly::constant(e));
    EXPECT_EQ(compositional_inverse(u), u);

    // g = u(1 + e u); the inverse is certified by substitution in both
    // orders before being compared with the closed form u(1 - e u).
    auto g = u + LaurentPoly::monomial(e, 2);
    auto h = compositional_inverse(g);
    EXPECT_EQ(substitute(g, h), u);
    EXPECT_EQ(substitute(h, g), u);
    EXPECT_EQ(h, u - LaurentPoly::monomial(e, 2));

    try {
        (void)compositional_inverse(LaurentPoly::monomial(RingElem::one(s), 2));
        FAIL() << "expected NotInvertible";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "NotInvertible");
    }
}

TEST(Laurent, SubstitutionPropertiesRandomized) {
    Rng rng(7);
    for (int m = 1; m <= 2; ++m)
        for (int N = 1; N <= 4; ++N) {
            auto s = make_spec(m, N);
            for (int trial = 0; trial < 10; ++trial) {
                auto f1 = random_laurent(s, rng);
                auto f2 = random_laurent(s, rng);
                auto g = random_witt(s, rng).map();
                auto h = random_witt(s, rng).map();
                EXPECT_EQ(substitute(substitute(f1, g), h), substitute(f1, substitute(g, h)));
                EXPECT_EQ(substitute(f1 * f2, g), substitute(f1, g) * substitute(f2, g));
                auto ginv = compositional_inverse(g);
                EXPECT_EQ(substitute(g, ginv), LaurentPoly::u(s));
                EXPECT_EQ(substitute(ginv, g), LaurentPoly::u(s));
            }
        }
}
