#include <gtest/gtest.h>

#include "ffc/mutation.hpp"

using namespace ffc;

namespace {

ModularGraph graph(int V, std::vector<std::pair<int, int>> edges, std::vector<int> genus, int circles = 0) {
    return ModularGraph{Graph{V, std::move(edges), circles}, std::move(genus)};
}

constexpr int S = kBase;

std::vector<Leg> sorted_legs(std::vector<Leg> l) {
    std::sort(l.begin(), l.end());
    return l;
}

} // namespace

TEST(Collapse, SingleCorollaIsFixed) {
    auto g = graph(1, {{S, 0}, {0, S}, {0, S}}, {2});
    auto col = collapse(g, true);
    ASSERT_EQ(col.corollas.size(), 1u);
    EXPECT_EQ(col.corollas[0], (Corolla{2, {Leg::In, Leg::Out, Leg::Out}}));
}

TEST(Collapse, GenusAddsCycleRank) {
    // g=1 and g=2 joined by one edge, one half-edge on the first vertex
    auto g = graph(2, {{0, 1}, {0, S}}, {1, 2});
    auto col = collapse(g, true);
    ASSERT_EQ(col.corollas.size(), 1u);
    EXPECT_EQ(col.corollas[0].genus, 1 + 2 + cycle_rank_oracle(g)[0]);
    EXPECT_EQ(col.corollas[0].genus, 3);
    EXPECT_EQ(col.corollas[0].degree(), 1);

    auto loop = graph(1, {{0, 0}}, {0});
    auto cl = collapse(loop, false);
    ASSERT_EQ(cl.corollas.size(), 1u);
    EXPECT_EQ(cycle_rank_oracle(loop)[0], 1);
    EXPECT_EQ(cl.corollas[0], (Corolla{1, {}}));
}

TEST(Collapse, GenusMatchesOracleOnAllSmallGraphs) {
    for (bool directed : {true, false})
        for (const auto& g : enumerate_graphs({3, 4, 2}, directed)) {
            auto col = collapse(g, directed);
            auto rank = cycle_rank_oracle(g);
            int total = 0, expect = std::accumulate(g.genus.begin(), g.genus.end(), 0) + g.graph.circles;
            for (const auto& c : col.corollas)
                total += c.genus;
            for (int r : rank)
                expect += r;
            EXPECT_EQ(total, expect);
            EXPECT_EQ(total, std::accumulate(g.genus.begin(), g.genus.end(), 0) + betti1(g.graph));
        }
}

TEST(Collapse, OpenEdgesBecomeUnitCorollas) {
    auto g = graph(0, {{S, S}}, {});
    auto col = collapse(g, true);
    ASSERT_EQ(col.corollas.size(), 1u);
    EXPECT_TRUE(is_open_edge_shape(col.corollas[0]));
}

TEST(Split, Examples) {
    auto g = graph(2, {{0, 1}, {S, S}}, {0, 0});
    EXPECT_EQ(split(g, {0, 0}), g);

    auto one = split(g, {1, 0});
    EXPECT_EQ(one.graph.edges, (std::vector<std::pair<int, int>>{{0, S}, {S, S}, {S, 1}}));

    auto open = split(g, {0, 1});
    EXPECT_EQ(open.graph.edges, (std::vector<std::pair<int, int>>{{0, 1}, {S, S}, {S, S}}));
    EXPECT_EQ(collapse(open, true).corollas.size(), 3u);

    auto twice = split(g, {2, 0});
    EXPECT_EQ(twice.graph.edges, (std::vector<std::pair<int, int>>{{0, S}, {S, S}, {S, S}, {S, 1}}));

    try {
        (void)split(g, {1});
        FAIL() << "expected InvalidArgument";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "InvalidArgument");
    }
}

// Collapsing the full split recovers the vertex corollas (up to the order
// of legs).
TEST(Split, CollapseOfFullSplitRecoversVertices) {
    for (bool directed : {true, false})
        for (const auto& g : enumerate_graphs({3, 4, 2}, directed)) {
            auto col = collapse(full_split(g), directed);
            auto in = split_in(g, directed);
            ASSERT_EQ(col.num_vertex_components, g.num_vertices());
            for (int v = 0; v < g.num_vertices(); ++v) {
                EXPECT_EQ(col.corollas[v].genus, in[v].genus);
                EXPECT_EQ(sorted_legs(col.corollas[v].legs), sorted_legs(in[v].legs));
            }
        }
}

TEST(Compose, UnitLaw) {
    auto m = morphism_from_graph(graph(2, {{0, 1}, {S, 0}, {1, S}}, {0, 1}), true);
    EXPECT_EQ(compose_morphisms(identity_morphism(m.source, true), m), m);
    EXPECT_EQ(compose_morphisms(m, identity_morphism(m.target, true)), m);
}

// a -> b, then (ab) -> c: a path with two interior edges.
TEST(Compose, TwoTreeGraftsGiveAPath) {
    Corolla a{1, {Leg::In, Leg::Out}}, b{0, {Leg::In, Leg::Out}}, c{2, {Leg::In, Leg::Out}};
    Corolla ab{1, {Leg::In, Leg::Out}}, abc{3, {Leg::In, Leg::Out}};
    CorollaMorphism p{true, {a, b, c}, {ab, c}, {0, 0, 1},
                      {{{false, {0, 0}}, {true, {1, 0}}},
                       {{true, {0, 1}}, {false, {0, 1}}},
                       {{false, {1, 0}}, {false, {1, 1}}}}};
    CorollaMorphism q{true, {ab, c}, {abc}, {0, 0},
                      {{{false, {0, 0}}, {true, {1, 0}}}, {{true, {0, 1}}, {false, {0, 1}}}}};
    validate(p);
    validate(q);
    auto pq = compose_morphisms(p, q);
    validate(pq);
    EXPECT_EQ(count_interior_edges(pq), 2);
    auto g = graph_of(pq);
    auto col = collapse(g, true);
    ASSERT_EQ(col.corollas.size(), 1u);
    EXPECT_EQ(col.corollas[0].genus, 1 + 0 + 2 + cycle_rank_oracle(g)[0]);
    EXPECT_EQ(col.corollas[0], abc);
    EXPECT_EQ(pq, morphism_from_graph(graph(3, {{S, 0}, {0, 1}, {1, 2}, {2, S}}, {1, 0, 2}), true));
}

TEST(Compose, OpenEdgeChainsAndCircles) {
    // P creates an open edge; Q closes it into a circle.
    Corolla e{0, {Leg::In, Leg::Out}};
    CorollaMorphism p{true, {}, {e}, {}, {}};
    validate(p);
    CorollaMorphism loop{true, {e}, {Corolla{1, {}}}, {0}, {{{true, {0, 1}}, {true, {0, 0}}}}};
    validate(loop);
    auto pq = compose_morphisms(p, loop);
    EXPECT_EQ(pq.target, (Multicorolla{Corolla{1, {}}}));
    EXPECT_TRUE(pq.source.empty());
    validate(pq);
}

TEST(Compose, LabelMismatch) {
    auto m = identity_morphism({Corolla{0, {Leg::In}}}, true);
    auto n = identity_morphism({Corolla{0, {Leg::Out}}}, true);
    try {
        (void)compose_morphisms(m, n);
        FAIL() << "expected LabelMismatch";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), "LabelMismatch");
    }
}

TEST(Stability, Examples) {
    EXPECT_TRUE(is_stable(Corolla{0, {Leg::In, Leg::Out}}, true));
    EXPECT_FALSE(is_stable(Corolla{0, {Leg::Out}}, true));
    EXPECT_TRUE(is_stable(Corolla{2, {}}, false));
    EXPECT_TRUE(is_stable(Corolla{0, {Leg::Free}}, false));
    EXPECT_FALSE(is_stable_geometric(Corolla{0, {Leg::Free}}));
    EXPECT_TRUE(is_stable_geometric(Corolla{0, {Leg::Free, Leg::Free, Leg::Free}}));
    EXPECT_FALSE(is_stable(Corolla{1, {}}, false));
}

TEST(Projection, Examples) {
    Multicorolla m{Corolla{0, {Leg::In, Leg::Out}}, Corolla{1, {}}};
    EXPECT_EQ(project_to_fin(identity_morphism(m, true)), (std::vector<int>{0, 1}));
    auto path = morphism_from_graph(graph(3, {{S, 0}, {0, 1}, {1, 2}, {2, S}}, {0, 0, 0}), true);
    EXPECT_EQ(project_to_fin(path), (std::vector<int>{0, 0, 0}));
}

TEST(Bush, MorphismsAreRootedTrees) {
    int seen = 0;
    for (const auto& g : enumerate_graphs({3, 4, 0}, true)) {
        auto m = morphism_from_graph(g, true);
        if (!is_bush_morphism(m))
            continue;
        ++seen;
        EXPECT_TRUE(is_root_oriented_forest(m)) << to_string(m);
    }
    EXPECT_GT(seen, 0);
}

TEST(Laws, SmallBoundsBothCategories) {
    for (bool directed : {true, false}) {
        auto laws = check_category_laws({3, 3, 1}, directed, default_compose());
        EXPECT_TRUE(laws.ok()) << (laws.failures.empty() ? "" : laws.failures[0]);
        EXPECT_GT(laws.checks, 1000);
    }
}

TEST(OperadicAxioms, SmallBounds) {
    for (bool directed : {true, false}) {
        auto rep = check_operadic_axioms({2, 3, 1}, directed, default_compose());
        EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures[0]);
        EXPECT_GT(rep.checks, 100);
    }
}

TEST(OperadicAxioms, EmptyBoundsPassVacuously) {
    auto rep = check_operadic_axioms({0, 0, 0}, true, default_compose());
    EXPECT_TRUE(rep.ok());
}

TEST(OperadicAxioms, ReportsCorruptedComposition) {
    auto mutants = composition_mutants();
    ASSERT_GE(mutants.size(), 20u);
    auto rep = check_category_laws({2, 2, 1}, true, mutants[0].compose);
    rep.merge(check_operadic_axioms({2, 2, 1}, true, mutants[0].compose));
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.failures.empty());
}

TEST(Relabeling, InverseComposesToIdentity) {
    Multicorolla m{Corolla{0, {Leg::In, Leg::In, Leg::Out}}, Corolla{1, {Leg::Out}}};
    auto r = relabeling(m, {1, 0}, {{1, 2, 0}, {0}}, true);
    auto inv = inverse_relabeling(r);
    EXPECT_EQ(compose_morphisms(r, inv), identity_morphism(m, true));
    EXPECT_EQ(compose_morphisms(inv, r), identity_morphism(r.target, true));
}
