#include <gtest/gtest.h>

#include "ffc/random.hpp"

using namespace ffc;

TEST(Annuli, ChartExamples) {
    auto s = make_spec(1, 2);
    auto t = RingElem::var(s, 1);
    EXPECT_EQ(to_monoid_chart(FramedAnnulus::untwisted(t)), NormalForm::scaling(t));

    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        auto a = random_annulus(s, rng);
        EXPECT_EQ(from_monoid_chart(to_monoid_chart(a)), a);
        EXPECT_TRUE(to_monoid_chart(a).mid.reduce().is_zero());
    }
}

TEST(Annuli, RejectsUnitSmoothing) {
    auto s = make_spec(1, 2);
    try {
        (void)FramedAnnulus::untwisted(RingElem::one(s));
        FAIL() << "expected InvalidArgument";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "InvalidArgument");
    }
}

TEST(Annuli, GlueExamples) {
    auto s = make_spec(2, 3);
    auto zero = FramedAnnulus::untwisted(RingElem::zero(s));
    EXPECT_EQ(glue_annuli(zero, zero), zero);
    auto e1 = RingElem::var(s, 1), e2 = RingElem::var(s, 2);
    EXPECT_EQ(glue_annuli(FramedAnnulus::untwisted(e1), FramedAnnulus::untwisted(e2)),
              FramedAnnulus::untwisted(e1 * e2));
}

TEST(Annuli, GlueAssociative) {
    Rng rng(4);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 40; ++i) {
        auto a = random_annulus(s, rng), b = random_annulus(s, rng), c = random_annulus(s, rng);
        EXPECT_EQ(glue_annuli(a, glue_annuli(b, c)), glue_annuli(glue_annuli(a, b), c));
    }
}

TEST(Transition, Examples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    auto plain = FramedAnnulus::untwisted(RingElem::zero(s));
    auto T = transition_generic(plain);
    auto t = RingElem::param(T.spec(), 0);
    EXPECT_EQ(T, LaurentPoly::monomial(t, -1));

    auto twisted = FramedAnnulus::make(NegAut::from_coeffs(s, {e}), RingElem::zero(s), NegAut(s));
    auto T2 = transition_generic(twisted);
    auto t2 = RingElem::param(T2.spec(), 0);
    auto e2 = RingElem::var(T2.spec(), 1);
    EXPECT_EQ(T2, LaurentPoly::monomial(t2, -1) - LaurentPoly::monomial(e2 * t2, -2));
}

// Glue two generic annuli with invertible smoothing parameters s and t and
// compare the transition of the product with the composite of transitions.
TEST(Transition, OracleLaw) {
    Rng rng(6);
    for (int m = 1; m <= 2; ++m) {
        auto s = make_spec(m, 3);
        auto g = make_spec(m, 3, {"s", "t"});
        for (int i = 0; i < 30; ++i) {
            auto a = random_annulus(s, rng), b = random_annulus(s, rng);
            auto A = FramedAnnulus::generic(lift(a.alpha_in, g), RingElem::param(g, 0), lift(a.alpha_out, g));
            auto B = FramedAnnulus::generic(lift(b.alpha_in, g), RingElem::param(g, 1), lift(b.alpha_out, g));
            auto AB = glue_annuli(A, B);
            EXPECT_EQ(transition(AB), compose_through_antipode(transition(B), transition(A)));

            // The glued parameter is s*t times a unit congruent to 1.
            auto ratio = AB.t * (RingElem::param(g, 0) * RingElem::param(g, 1)).inverse();
            EXPECT_EQ(ratio.reduce(), RingElem::one(g));

            // Specializing s, t to the nilpotent parameters of a and b
            // recovers the honest product.
            auto spec_fn = [&](const RingElem& c) {
                return c.specialize(s, {{0, a.t}, {1, b.t}});
            };
            FramedAnnulus down{NegAut::from_laurent(AB.alpha_in.map().map_coeffs(s, spec_fn)), spec_fn(AB.t),
                               NegAut::from_laurent(AB.alpha_out.map().map_coeffs(s, spec_fn))};
            EXPECT_EQ(down, glue_annuli(a, b));
        }
    }
}

TEST(Annuli, ReverseIsAntiHomomorphism) {
    Rng rng(8);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 40; ++i) {
        auto a = random_normal_form(s, rng, MidKind::Any), b = random_normal_form(s, rng, MidKind::Any);
        EXPECT_EQ(reverse(a * b), reverse(b) * reverse(a));
        EXPECT_EQ(reverse(reverse(a)), a);
        auto x = random_annulus(s, rng);
        EXPECT_EQ(to_monoid_chart(reverse(x)), reverse(to_monoid_chart(x)));
    }
}
