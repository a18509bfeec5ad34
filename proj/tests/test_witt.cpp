#include <gtest/gtest.h>

#include "ffc/random.hpp"

using namespace ffc;

namespace {

LaurentPoly mono(const RingElem& c, int k) { return LaurentPoly::monomial(c, k); }

// Specialize every coefficient of a normal form along a parameter map.
NormalForm specialize(const NormalForm& a, const SpecRef& target,
                      const std::vector<std::pair<int, RingElem>>& values) {
    auto f = [&](const RingElem& c) { return c.specialize(target, values); };
    return {NegAut::from_laurent(a.neg.map().map_coeffs(target, f)), f(a.mid),
            PosAut::from_laurent(a.pos.map().map_coeffs(target, f))};
}

} // namespace

TEST(Witt, ComposeExamples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    auto two = WittAut::scaling(RingElem::constant(s, 2));
    auto three = WittAut::scaling(RingElem::constant(s, 3));
    EXPECT_EQ(compose_aut(two, three), WittAut::scaling(RingElem::constant(s, 6)));

    auto u = LaurentPoly::u(s);
    auto plus = WittAut::from_laurent(u + LaurentPoly::constant(e));
    auto minus = WittAut::from_laurent(u - LaurentPoly::constant(e));
    EXPECT_EQ(compose_aut(plus, minus), WittAut::identity(s));
}

TEST(Witt, ReductionIsHomomorphism) {
    Rng rng(5);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 50; ++i) {
        auto f = random_witt(s, rng);
        auto g = random_witt(s, rng);
        EXPECT_EQ(compose_aut(f, g).c().reduce(), f.c().reduce() * g.c().reduce());
    }
}

TEST(Witt, InverseExamples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    EXPECT_EQ(invert_aut(WittAut::scaling(RingElem::constant(s, 2))),
              WittAut::scaling(RingElem::constant(s, Rational(1, 2))));
    EXPECT_EQ(invert_aut(WittAut::identity(s)), WittAut::identity(s));

    auto u = LaurentPoly::u(s);
    auto f = WittAut::from_laurent(u + mono(e, 2));
    auto g = invert_aut(f);
    EXPECT_EQ(compose_aut(f, g), WittAut::identity(s));
    EXPECT_EQ(compose_aut(g, f), WittAut::identity(s));
    EXPECT_EQ(g.map(), u - mono(e, 2));
}

TEST(Witt, PartsRoundTrip) {
    Rng rng(9);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 50; ++i) {
        auto f = random_witt(s, rng);
        EXPECT_EQ(WittAut::from_parts(f.c(), f.n()), f);
    }
}

TEST(Birkhoff, Examples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    auto one = RingElem::one(s);
    EXPECT_EQ(birkhoff_factor(WittAut::identity(s)), NormalForm::identity(s));

    auto u = LaurentPoly::u(s);
    auto f = WittAut::from_laurent(u + mono(e, 2) + mono(e, 0));
    NormalForm expect{NegAut::from_coeffs(s, {e}), one, PosAut::from_coeffs(s, {e})};
    EXPECT_EQ(birkhoff_factor(f), expect);
    EXPECT_EQ(as_automorphism(expect), f);
}

TEST(Birkhoff, RecoversAssembledTriples) {
    Rng rng(13);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 100; ++i) {
        NormalForm t = random_normal_form(s, rng, MidKind::Unit);
        EXPECT_EQ(birkhoff_factor(as_automorphism(t)), t);
        auto f = random_witt(s, rng);
        EXPECT_EQ(as_automorphism(birkhoff_factor(f)), f);
    }
}

TEST(Birkhoff, MidNotAUnit) {
    auto s = make_spec(1, 2);
    NormalForm a = NormalForm::scaling(RingElem::var(s, 1));
    try {
        (void)as_automorphism(a);
        FAIL() << "expected MidNotAUnit";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "MidNotAUnit");
    }
    EXPECT_EQ(as_automorphism(NormalForm::scaling(RingElem::constant(s, 2))),
              WittAut::scaling(RingElem::constant(s, 2)));
}

TEST(ScaleConjugate, Examples) {
    auto s = make_spec(1, 1);
    auto e = RingElem::var(s, 1);
    auto d = NegAut::from_coeffs(s, {e});
    EXPECT_EQ(scale_conjugate_neg(d, RingElem::constant(s, 3)), NegAut::from_coeffs(s, {3 * e}));
    EXPECT_EQ(scale_conjugate_neg(d, RingElem::zero(s)), NegAut(s));
    EXPECT_EQ(scale_conjugate_neg(d, RingElem::one(s)), d);

    auto p = PosAut::from_coeffs(s, {e});
    EXPECT_EQ(scale_conjugate_pos(p, RingElem::constant(s, 2)), PosAut::from_coeffs(s, {2 * e}));
    EXPECT_EQ(scale_conjugate_pos(p, RingElem::zero(s)), PosAut(s));
    EXPECT_EQ(scale_conjugate_pos(p, RingElem::one(s)), p);
}

TEST(ScaleConjugate, MatchesConjugationForUnits) {
    Rng rng(17);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 40; ++i) {
        auto c = random_unit(s, rng);
        auto mc = WittAut::scaling(c);
        auto mcinv = WittAut::scaling(c.inverse());
        auto d = random_neg(s, rng);
        EXPECT_EQ(scale_conjugate_neg(d, c).as_aut(), compose_aut(mc, compose_aut(d.as_aut(), mcinv)));
        auto p = random_pos(s, rng);
        EXPECT_EQ(scale_conjugate_pos(p, c).as_aut(), compose_aut(mcinv, compose_aut(p.as_aut(), mc)));
    }
}

TEST(NormalProduct, UnitAndScalings) {
    auto s = make_spec(1, 2, {"s", "t"});
    auto ps = RingElem::param(s, 0), pt = RingElem::param(s, 1);
    EXPECT_EQ(NormalForm::scaling(ps) * NormalForm::scaling(pt), NormalForm::scaling(ps * pt));
    Rng rng(1);
    auto b = make_spec(1, 2);
    auto a = random_normal_form(b, rng, MidKind::Any);
    EXPECT_EQ(NormalForm::identity(b) * a, a);
    EXPECT_EQ(a * NormalForm::identity(b), a);
}

TEST(NormalProduct, SymbolicMidsAgainstGroupOracle) {
    // (id, c, x + e x^2) . (x + e, d, id) with c, d generic units. The oracle
    // factors the composite automorphism directly.
    auto s = make_spec(1, 1, {"c", "d"});
    auto e = RingElem::var(s, 1);
    auto c = RingElem::param(s, 0), d = RingElem::param(s, 1);
    NormalForm A{NegAut(s), c, PosAut::from_coeffs(s, {e})};
    NormalForm B{NegAut::from_coeffs(s, {e}), d, PosAut(s)};
    NormalForm oracle = birkhoff_factor(compose_aut(as_automorphism(A), as_automorphism(B)));
    NormalForm got = A * B;
    EXPECT_EQ(got, oracle);
    EXPECT_EQ(got, (NormalForm{NegAut::from_coeffs(s, {c * e}), c * d, PosAut::from_coeffs(s, {d * e})}));

    // The product is polynomial in the mids, so specializing c and d to
    // non-units commutes with the product.
    auto base = make_spec(1, 1);
    auto eb = RingElem::var(base, 1);
    for (const auto& [cv, dv] : std::vector<std::pair<RingElem, RingElem>>{
             {RingElem::zero(base), RingElem::constant(base, 5)},
             {eb, RingElem::zero(base)},
             {RingElem::constant(base, 2) + eb, 3 * eb}}) {
        std::vector<std::pair<int, RingElem>> vals{{0, cv}, {1, dv}};
        EXPECT_EQ(specialize(got, base, vals), specialize(A, base, vals) * specialize(B, base, vals));
    }
}

TEST(NormalProduct, LawsRandomized) {
    Rng rng(23);
    for (int m = 1; m <= 2; ++m) {
        auto s = make_spec(m, 3);
        for (int i = 0; i < 60; ++i) {
            auto a = random_normal_form(s, rng, MidKind::Any);
            auto b = random_normal_form(s, rng, MidKind::Any);
            auto c = random_normal_form(s, rng, MidKind::Any);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ((a * b).mid.reduce(), a.mid.reduce() * b.mid.reduce());
            if (a.mid.is_unit() && b.mid.is_unit()) {
                EXPECT_EQ(a * b, birkhoff_factor(compose_aut(as_automorphism(a), as_automorphism(b))));
            }
        }
    }
}

TEST(Subgroups, ClosedUnderComposition) {
    Rng rng(29);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 40; ++i) {
        auto f = substitute(random_neg(s, rng).map(), random_neg(s, rng).map());
        EXPECT_LE(f.max_exp(), 1);
        EXPECT_NO_THROW((void)NegAut::from_laurent(f));
        auto g = substitute(random_pos(s, rng).map(), random_pos(s, rng).map());
        EXPECT_GE(g.min_exp(), 1);
        EXPECT_NO_THROW((void)PosAut::from_laurent(g));
    }
}
