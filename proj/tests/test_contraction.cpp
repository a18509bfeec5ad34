#include <gtest/gtest.h>

#include "ffc/checks.hpp"

using namespace ffc;

namespace {

constexpr int S = kBase;

CorollaMorphism from_graph(int V, std::vector<std::pair<int, int>> edges, std::vector<int> genus, bool directed = true) {
    return morphism_from_graph(ModularGraph{Graph{V, std::move(edges), 0}, std::move(genus)}, directed);
}

std::vector<int> iota(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

} // namespace

TEST(Contraction, TerminalGivesTheTarget) {
    auto m = from_graph(3, {{S, 0}, {0, 1}, {1, 2}, {2, 0}, {2, S}}, {0, 1, 0});
    auto out = evaluate_contraction(m, TerminalAlgebra{}, m.source, iota(3));
    EXPECT_EQ(out, m.target);
    EXPECT_EQ(out[0].genus, 2);
}

TEST(Contraction, UnitsOnOpenEdgesAndCircles) {
    CorollaMorphism m{false, {}, {Corolla{0, {Leg::Free, Leg::Free}}, Corolla{1, {}}}, {}, {}};
    validate(m);
    EXPECT_EQ(evaluate_contraction(m, TerminalAlgebra{}, {}, {}), m.target);
    EXPECT_EQ(evaluate_contraction(m, CountAlgebra{5}, {}, {}), (std::vector<int>{0, 1}));
}

TEST(Contraction, SingleEdgeIsTheGraft) {
    auto spec = make_spec(2, 3);
    Rng rng(31);
    // vertex 0: in, out (to vertex 1); vertex 1: in, in, out
    auto m = from_graph(2, {{S, 0}, {0, 1}, {S, 1}, {1, S}}, {0, 0});
    ASSERT_EQ(m.source[0].legs, (std::vector<Leg>{Leg::In, Leg::Out}));
    ASSERT_EQ(m.source[1].legs, (std::vector<Leg>{Leg::In, Leg::In, Leg::Out}));
    auto h = random_normal_form(spec, rng, MidKind::Any);
    auto g1 = random_normal_form(spec, rng, MidKind::Any);
    auto g2 = random_normal_form(spec, rng, MidKind::Any);
    BushAnnuliAlgebra alg{spec};
    auto out = evaluate_contraction(m, alg, {{h, std::nullopt}, {g1, g2, std::nullopt}}, {0});
    ASSERT_EQ(out.size(), 1u);
    // target legs follow edge order: edge 0 (in), edge 2 (in), edge 3 (out)
    BushAnnuliAlgebra::Value expect{h * g1, g2, std::nullopt};
    EXPECT_EQ(out[0], expect);
    EXPECT_EQ(out[0], alg.graft(m.source[0], {h, std::nullopt}, 1, m.source[1], {g1, g2, std::nullopt}, 0));
}

TEST(Contraction, CountAlgebraCountsLoops) {
    for (const auto& g : enumerate_graphs({3, 4, 2}, false)) {
        auto m = morphism_from_graph(g, false);
        std::vector<int> inputs(m.source.size(), 0);
        auto out = evaluate_contraction(m, CountAlgebra{101}, inputs, iota(count_interior_edges(m)));
        int total = 0;
        for (int x : out)
            total += x;
        EXPECT_EQ(total, betti1(g.graph));
    }
}

TEST(Contraction, ColorMismatch) {
    auto spec = make_spec(1, 2);
    BushAnnuliAlgebra alg{spec};
    auto loop = from_graph(1, {{0, 0}, {S, 0}, {0, S}}, {0});
    BushAnnuliAlgebra::Value v(loop.source[0].degree());
    try {
        (void)evaluate_contraction(loop, alg, {v}, {0});
        FAIL() << "expected ColorMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "ColorMismatch");
    }
    auto undirected = from_graph(2, {{0, 1}}, {0, 0}, false);
    try {
        (void)evaluate_contraction(undirected, alg, {{std::nullopt}, {std::nullopt}}, {0});
        FAIL() << "expected ColorMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "ColorMismatch");
    }
}

TEST(Contraction, RejectsBadOrders) {
    auto m = from_graph(2, {{0, 1}, {1, 0}}, {0, 0});
    try {
        (void)evaluate_contraction(m, TerminalAlgebra{}, m.source, {0, 0});
        FAIL() << "expected InvalidArgument";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "InvalidArgument");
    }
}

TEST(Contraction, OrderIndependenceSmallGraphs) {
    Rng rng(37);
    long accepted = 0;
    auto rep = check_contraction_orders({2, 3, 1}, {4, 3, 0}, make_spec(1, 3), rng, &accepted);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures[0]);
    EXPECT_GT(accepted, 5);
}
