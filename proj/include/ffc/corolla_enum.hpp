#pragma once

// Bounded enumeration of modular graphs and hom-sets of the corolla
// categories, and exhaustive checks of the category and operadic-pair
// axioms. Composition is a parameter so that corrupted variants can be fed
// through the same checks.

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ffc/corolla.hpp"

namespace ffc {

struct CorollaBounds {
    int max_vertices = 3;
    int max_edges = 4; ///< edges of the graph, circles included
    int max_genus = 2; ///< bound on vertex genera and collapsed genera
};

namespace detail {

inline std::vector<std::pair<int, int>> endpoint_pairs(int V, bool directed) {
    std::vector<std::pair<int, int>> out;
    for (int a = kBase; a < V; ++a)
        for (int b = directed ? kBase : a; b < V; ++b)
            out.emplace_back(a, b);
    return out;
}

// Key of a graph up to vertex renumbering and edge order.
inline std::vector<int> iso_key(const ModularGraph& g, bool directed) {
    const int V = g.graph.num_vertices;
    std::vector<int> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<std::pair<int, int>> edges;
        for (auto [a, b] : g.graph.edges) {
            int pa = a == kBase ? kBase : perm[a], pb = b == kBase ? kBase : perm[b];
            if (!directed && pb < pa)
                std::swap(pa, pb);
            edges.emplace_back(pa, pb);
        }
        std::sort(edges.begin(), edges.end());
        std::vector<int> key(V);
        for (int v = 0; v < V; ++v)
            key[perm[v]] = g.genus[v];
        key.push_back(g.graph.circles);
        for (auto [a, b] : edges) {
            key.push_back(a);
            key.push_back(b);
        }
        if (best.empty() || key < best)
            best = std::move(key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.empty())
        best.push_back(g.graph.circles);
    return best;
}

} // namespace detail

inline bool within_genus(const ModularGraph& g, int max_genus, bool directed) {
    for (int x : g.genus)
        if (x > max_genus)
            return false;
    for (const auto& c : collapse(g, directed).corollas)
        if (c.genus > max_genus)
            return false;
    return true;
}

/// All modular graphs within the bounds, one per isomorphism class when
/// `up_to_iso` (vertex renumbering and edge order).
inline std::vector<ModularGraph> enumerate_graphs(const CorollaBounds& b, bool directed, bool up_to_iso = true) {
    std::vector<ModularGraph> out;
    std::set<std::vector<int>> seen;
    for (int V = 0; V <= b.max_vertices; ++V) {
        auto pairs = detail::endpoint_pairs(V, directed);
        std::vector<int> genus(V, 0);
        auto emit_genera = [&](const Graph& g) {
            std::fill(genus.begin(), genus.end(), 0);
            while (true) {
                ModularGraph mg{g, genus};
                if (within_genus(mg, b.max_genus, directed)) {
                    if (!up_to_iso || seen.insert(detail::iso_key(mg, directed)).second)
                        out.push_back(mg);
                }
                int k = 0;
                while (k < V && genus[k] == b.max_genus)
                    genus[k++] = 0;
                if (k == V)
                    break;
                ++genus[k];
            }
        };
        for (int circles = 0; circles <= b.max_edges; ++circles) {
            int budget = b.max_edges - circles;
            std::vector<int> idx;
            auto rec = [&](auto&& self, int start) -> void {
                Graph g{V, {}, circles};
                for (int i : idx)
                    g.edges.push_back(pairs[i]);
                emit_genera(g);
                if (static_cast<int>(idx.size()) == budget)
                    return;
                for (int i = start; i < static_cast<int>(pairs.size()); ++i) {
                    idx.push_back(i);
                    self(self, i);
                    idx.pop_back();
                }
            };
            rec(rec, 0);
        }
    }
    return out;
}

/// Every morphism X -> Y whose graph has at most `max_edges` edges.
inline std::vector<CorollaMorphism> hom_set(const Multicorolla& X, const Multicorolla& Y, bool directed,
                                            int max_edges = INT_MAX) {
    std::vector<CorollaMorphism> out;
    std::vector<Flag> flags;
    for (int v = 0; v < static_cast<int>(X.size()); ++v)
        for (int l = 0; l < X[v].degree(); ++l)
            flags.push_back({v, l});
    for (const auto* side : {&X, &Y})
        for (const auto& c : *side)
            for (Leg l : c.legs)
                if ((l == Leg::Free) == directed)
                    return out;
    const int F = static_cast<int>(flags.size());
    std::vector<int> partner(F, -2); // -2 unassigned, -1 external
    auto leg_of = [&](int i) { return X[flags[i].corolla].legs[flags[i].leg]; };

    auto finish = [&]() {
        CorollaMorphism m{directed, X, Y, std::vector<int>(X.size(), -1), {}};
        m.flags.resize(X.size());
        for (int v = 0; v < static_cast<int>(X.size()); ++v)
            m.flags[v].resize(X[v].degree());
        int interior = 0;
        for (int i = 0; i < F; ++i)
            if (partner[i] >= 0) {
                m.flags[flags[i].corolla][flags[i].leg] = FlagImage{true, flags[partner[i]]};
                ++interior;
            }
        interior /= 2;
        int comps = 0;
        auto comp = source_components(m, &comps);
        std::vector<int> genus(comps, 0), verts(comps, 0), edges2(comps, 0);
        std::vector<std::vector<int>> ext(comps);
        for (int v = 0; v < static_cast<int>(X.size()); ++v) {
            genus[comp[v]] += X[v].genus;
            ++verts[comp[v]];
        }
        for (int i = 0; i < F; ++i) {
            int c = comp[flags[i].corolla];
            if (partner[i] >= 0)
                ++edges2[c];
            else
                ext[c].push_back(i);
        }
        for (int c = 0; c < comps; ++c)
            genus[c] += edges2[c] / 2 - verts[c] + 1;
        int external = F - 2 * interior;

        std::vector<int> assign(comps, -1);
        std::vector<bool> used(Y.size(), false);
        auto legs_signature = [](std::vector<Leg> legs) {
            std::sort(legs.begin(), legs.end());
            return legs;
        };
        std::vector<std::vector<Leg>> ext_sig(comps);
        for (int c = 0; c < comps; ++c) {
            std::vector<Leg> legs;
            for (int i : ext[c])
                legs.push_back(leg_of(i));
            ext_sig[c] = legs_signature(legs);
        }
        auto place_legs = [&](auto&& self, int c) -> void {
            if (c == comps) {
                out.push_back(m);
                return;
            }
            const Corolla& target = Y[assign[c]];
            std::vector<int> perm(ext[c].size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                bool ok = true;
                for (std::size_t k = 0; k < perm.size() && ok; ++k)
                    ok = target.legs[perm[k]] == leg_of(ext[c][k]);
                if (!ok)
                    continue;
                for (std::size_t k = 0; k < perm.size(); ++k) {
                    Flag f = flags[ext[c][k]];
                    m.flags[f.corolla][f.leg] = FlagImage{false, {assign[c], perm[k]}};
                }
                self(self, c + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        auto choose_targets = [&](auto&& self, int c) -> void {
            if (c == comps) {
                int extra = 0;
                for (int t = 0; t < static_cast<int>(Y.size()); ++t) {
                    if (used[t])
                        continue;
                    if (!is_open_edge_shape(Y[t]) && !is_circle_shape(Y[t]))
                        return;
                    ++extra;
                }
                if (interior + external + extra > max_edges)
                    return;
                for (int v = 0; v < static_cast<int>(X.size()); ++v)
                    m.vertex_map[v] = assign[comp[v]];
                place_legs(place_legs, 0);
                return;
            }
            for (int t = 0; t < static_cast<int>(Y.size()); ++t) {
                if (used[t] || Y[t].genus != genus[c] || legs_signature(Y[t].legs) != ext_sig[c])
                    continue;
                used[t] = true;
                assign[c] = t;
                self(self, c + 1);
                used[t] = false;
            }
        };
        choose_targets(choose_targets, 0);
    };

    auto match = [&](auto&& self, int i) -> void {
        while (i < F && partner[i] != -2)
            ++i;
        if (i == F) {
            finish();
            return;
        }
        partner[i] = -1;
        self(self, i + 1);
        for (int j = i + 1; j < F; ++j) {
            if (partner[j] != -2 || !detail::pair_compatible(directed, leg_of(i), leg_of(j)))
                continue;
            partner[i] = j;
            partner[j] = i;
            self(self, i + 1);
            partner[j] = -2;
        }
        partner[i] = -2;
    };
    match(match, 0);
    return out;
}

/// Cycle rank of the interior computed from a spanning forest (breadth
/// first search), independent of the union-find used by collapse.
inline std::vector<int> cycle_rank_oracle(const ModularGraph& mg) {
    const Graph& g = mg.graph;
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.is_interior(e)) {
            adj[g.edges[e].first].push_back(g.edges[e].second);
            adj[g.edges[e].second].push_back(g.edges[e].first);
        }
    std::vector<int> comp(g.num_vertices, -1);
    std::vector<int> rank;
    std::vector<int> tree_edges, comp_edges;
    for (int s = 0; s < g.num_vertices; ++s) {
        if (comp[s] >= 0)
            continue;
        int c = static_cast<int>(rank.size());
        rank.push_back(0);
        tree_edges.push_back(0);
        comp_edges.push_back(0);
        std::vector<int> queue{s};
        comp[s] = c;
        for (std::size_t k = 0; k < queue.size(); ++k)
            for (int w : adj[queue[k]])
                if (comp[w] < 0) {
                    comp[w] = c;
                    ++tree_edges[c];
                    queue.push_back(w);
                }
    }
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.is_interior(e))
            ++comp_edges[comp[g.edges[e].first]];
    for (std::size_t c = 0; c < rank.size(); ++c)
        rank[c] = comp_edges[c] - tree_edges[c];
    return rank;
}

// ---------------------------------------------------------------------------
// Axiom checks.

struct AxiomReport {
    long checks = 0;
    long failed = 0;
    std::vector<std::string> failures; ///< the first few counterexamples

    bool ok() const { return failed == 0; }
    void expect(bool cond, const std::function<std::string()>& what) {
        ++checks;
        if (cond)
            return;
        if (++failed <= 20)
            failures.push_back(what());
    }
    void merge(const AxiomReport& o) {
        checks += o.checks;
        failed += o.failed;
        for (const auto& f : o.failures)
            if (failures.size() < 20)
                failures.push_back(f);
    }
};

using ComposeFn = std::function<CorollaMorphism(const CorollaMorphism&, const CorollaMorphism&)>;

inline ComposeFn default_compose() { return [](const auto& p, const auto& q) { return compose_morphisms(p, q); }; }

namespace detail {

inline bool is_valid(const CorollaMorphism& m) {
    try {
        validate(m);
        return true;
    } catch (const Error&) {
        return false;
    }
}

inline std::string key(const Multicorolla& m) { return to_string(m); }

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Relabelings of M generating all of them: the identity, a transposition
// and a rotation of the corollas, each combined with identity, reversed or
// rotated leg orders.
inline std::vector<CorollaMorphism> relabelings_of(const Multicorolla& m, bool directed) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> perms;
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    perms.push_back(id);
    if (n >= 2) {
        auto swap01 = id;
        std::swap(swap01[0], swap01[1]);
        perms.push_back(swap01);
    }
    if (n >= 3) {
        auto rot = id;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        perms.push_back(rot);
    }
    std::vector<CorollaMorphism> out;
    for (const auto& perm : perms)
        for (int variant = 0; variant < 3; ++variant) {
            std::vector<std::vector<int>> legs(m.size());
            for (std::size_t v = 0; v < m.size(); ++v) {
                int d = m[v].degree();
                for (int l = 0; l < d; ++l)
                    legs[v].push_back(variant == 0 ? l : variant == 1 ? d - 1 - l : (l + 1) % d);
            }
            out.push_back(relabeling(m, perm, legs, directed));
        }
    return out;
}

inline bool is_identity(const CorollaMorphism& m) { return m == identity_morphism(m.source, m.directed); }

} // namespace detail

/// Category laws on the canonical morphisms of all graphs within the bounds
/// together with relabelings of their sources and targets: validity,
/// collapse genus against the cycle-rank oracle, unit laws, associativity
/// of all composable triples, functoriality of Pi and of forgetting
/// orientation, closure of stability and the tree structure of bushes.
inline AxiomReport check_category_laws(const CorollaBounds& b, bool directed, const ComposeFn& compose) {
    AxiomReport rep;
    auto graphs = enumerate_graphs(b, directed);
    std::vector<CorollaMorphism> family;
    std::set<std::string> objects_seen;
    std::vector<Multicorolla> objects;
    for (const auto& g : graphs) {
        CorollaMorphism m = morphism_from_graph(g, directed);
        auto oracle = cycle_rank_oracle(g);
        Collapse col = collapse(g, directed);
        for (int c = 0; c < col.num_vertex_components; ++c) {
            int gsum = 0;
            for (int v = 0; v < g.graph.num_vertices; ++v)
                if (col.vertex_corolla[v] == c)
                    gsum += g.genus[v];
            rep.expect(col.corollas[c].genus == gsum + oracle[c], [&] { return "collapse genus disagrees with cycle rank"; });
        }
        family.push_back(m);
        for (const auto* obj : {&m.source, &m.target})
            if (objects_seen.insert(detail::key(*obj)).second)
                objects.push_back(*obj);
    }
    // Relabelings out of and into every object.
    for (const auto& obj : objects)
        for (auto& r : detail::relabelings_of(obj, directed)) {
            if (detail::is_identity(r))
                continue;
            family.push_back(r);
            family.push_back(inverse_relabeling(r));
        }

    std::map<std::string, std::vector<int>> by_source;
    for (int i = 0; i < static_cast<int>(family.size()); ++i)
        by_source[detail::key(family[i].source)].push_back(i);

    auto safe_compose = [&](const CorollaMorphism& p, const CorollaMorphism& q, CorollaMorphism& out) {
        try {
            out = compose(p, q);
            validate(out);
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    for (const auto& m : family) {
        rep.expect(detail::is_valid(m), [&] { return "invalid morphism " + to_string(m); });
        CorollaMorphism left, right;
        bool ok = safe_compose(identity_morphism(m.source, directed), m, left) &&
                  safe_compose(m, identity_morphism(m.target, directed), right);
        rep.expect(ok && left == m && right == m, [&] { return "unit law fails for " + to_string(m); });
        if (is_bush_morphism(m))
            rep.expect(is_root_oriented_forest(m) || !directed, [&] { return "bush morphism is not a tree " + to_string(m); });
    }

    for (const auto& p : family) {
        auto it = by_source.find(detail::key(p.target));
        if (it == by_source.end())
            continue;
        for (int qi : it->second) {
            const auto& q = family[qi];
            CorollaMorphism pq;
            if (!safe_compose(p, q, pq)) {
                rep.expect(false, [&] { return "composition failed " + to_string(p) + " ; " + to_string(q); });
                continue;
            }
            rep.expect(detail::is_valid(pq), [&] { return "invalid composite " + to_string(p) + " ; " + to_string(q); });
            rep.expect(pq.source == p.source && pq.target == q.target, [&] { return "composite has wrong ends"; });
            std::vector<int> fin(p.vertex_map.size());
            for (std::size_t v = 0; v < fin.size(); ++v)
                fin[v] = q.vertex_map[p.vertex_map[v]];
            rep.expect(project_to_fin(pq) == fin, [&] { return "Pi is not functorial on " + to_string(p); });
            if (is_stable(p) && is_stable(q))
                rep.expect(is_stable(pq), [&] { return "stable morphisms compose to an unstable one"; });
            if (directed) {
                CorollaMorphism fpq;
                bool okf = safe_compose(forget_orientation(p), forget_orientation(q), fpq);
                rep.expect(okf && fpq == forget_orientation(pq), [&] { return "forgetting orientation is not functorial"; });
            }
            auto it2 = by_source.find(detail::key(q.target));
            if (it2 == by_source.end())
                continue;
            for (int ri : it2->second) {
                const auto& r = family[ri];
                CorollaMorphism a, c, qr, bb;
                bool ok = safe_compose(pq, r, a) && safe_compose(q, r, qr) && safe_compose(p, qr, c);
                rep.expect(ok && a == c, [&] {
                    return "associativity fails for " + to_string(p) + " ; " + to_string(q) + " ; " + to_string(r);
                });
            }
        }
    }
    return rep;
}

/// The operadic-pair axioms, exhaustively over the pairs (X, Y) that are
/// source and target of a canonical morphism within the bounds:
///  (i)   hom_f(X, Y) -> prod_t hom(X_f^-1(t), Y_t) is a bijection;
///  (ii)  relabeling lifts over bijections of component sets exist, are
///        invertible and induce bijections of hom-sets by precomposition;
///  (iii) morphisms over identities of a disjoint union are exactly
///        tensor products of morphisms over the pieces.
inline AxiomReport check_operadic_axioms(const CorollaBounds& b, bool directed, const ComposeFn& compose) {
    AxiomReport rep;
    auto graphs = enumerate_graphs(b, directed);
    std::set<std::pair<std::string, std::string>> seen;
    auto safe_compose = [&](const CorollaMorphism& p, const CorollaMorphism& q, CorollaMorphism& out) {
        try {
            out = compose(p, q);
            validate(out);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    for (const auto& g : graphs) {
        CorollaMorphism m = morphism_from_graph(g, directed);
        const Multicorolla &X = m.source, &Y = m.target;
        if (!seen.insert({detail::key(X), detail::key(Y)}).second)
            continue;
        auto hom = hom_set(X, Y, directed);
        rep.expect(std::find(hom.begin(), hom.end(), m) != hom.end(),
                   [&] { return "hom-set enumeration misses " + to_string(m); });

        // (i) Segal decomposition along Pi.
        std::map<std::vector<int>, std::vector<CorollaMorphism>> by_f;
        for (const auto& h : hom)
            by_f[h.vertex_map].push_back(h);
        for (const auto& [f, homs] : by_f) {
            std::vector<std::vector<int>> pre(Y.size());
            for (int v = 0; v < static_cast<int>(f.size()); ++v)
                pre[f[v]].push_back(v);
            long expected = 1;
            std::vector<std::vector<CorollaMorphism>> pieces(Y.size());
            for (int t = 0; t < static_cast<int>(Y.size()); ++t) {
                Multicorolla Xt;
                for (int v : pre[t])
                    Xt.push_back(X[v]);
                pieces[t] = hom_set(Xt, {Y[t]}, directed);
                expected *= static_cast<long>(pieces[t].size());
            }
            std::set<std::vector<std::string>> images;
            for (const auto& h : homs) {
                std::vector<std::string> parts;
                bool inside = true;
                for (int t = 0; t < static_cast<int>(Y.size()); ++t) {
                    auto r = restrict_to(h, t);
                    inside = inside && std::find(pieces[t].begin(), pieces[t].end(), r) != pieces[t].end();
                    parts.push_back(to_string(r));
                }
                rep.expect(inside, [&] { return "restriction leaves the hom-set: " + to_string(h); });
                images.insert(parts);
            }
            rep.expect(static_cast<long>(images.size()) == static_cast<long>(homs.size()) &&
                           static_cast<long>(homs.size()) == expected,
                       [&] { return "hom_f is not the product of its fibers for " + to_string(m); });
        }

        // (ii) relabeling lifts.
        for (const auto& r : detail::relabelings_of(X, directed)) {
            CorollaMorphism r2 = inverse_relabeling(r), c1, c2;
            bool inv = r2.target == X && safe_compose(r, r2, c1) && safe_compose(r2, r, c2) &&
                       detail::is_identity(c1) && detail::is_identity(c2);
            rep.expect(inv, [&] { return "relabeling has no inverse: " + to_string(r); });
            rep.expect(project_to_fin(r) == r.vertex_map && detail::is_valid(r),
                       [&] { return "relabeling does not lie over its permutation"; });
            auto hom_r = hom_set(r.target, Y, directed);
            std::set<std::string> pulled;
            bool ok = true;
            for (const auto& h : hom_r) {
                CorollaMorphism c;
                ok = ok && safe_compose(r, h, c) && std::find(hom.begin(), hom.end(), c) != hom.end();
                if (ok)
                    pulled.insert(to_string(c));
            }
            rep.expect(ok && pulled.size() == hom.size() && hom_r.size() == hom.size(),
                       [&] { return "precomposition with a relabeling is not a bijection at " + to_string(X); });
        }

        // (iii) split X and Y as X1 u X2, Y1 u Y2 along the first corolla of Y.
        if (Y.size() >= 2) {
            std::vector<int> x1, x2;
            for (int v = 0; v < static_cast<int>(X.size()); ++v)
                (m.vertex_map[v] == 0 ? x1 : x2).push_back(v);
            Multicorolla X1, X2, Y1{Y[0]}, Y2(Y.begin() + 1, Y.end());
            for (int v : x1)
                X1.push_back(X[v]);
            for (int v : x2)
                X2.push_back(X[v]);
            Multicorolla X12 = X1;
            X12.insert(X12.end(), X2.begin(), X2.end());
            auto h1 = hom_set(X1, Y1, directed), h2 = hom_set(X2, Y2, directed);
            std::set<std::string> tensors;
            for (const auto& a : h1)
                for (const auto& c : h2) {
                    auto t = tensor(a, c);
                    rep.expect(detail::is_valid(t), [&] { return "tensor of morphisms is invalid"; });
                    tensors.insert(to_string(t));
                }
            long over = 0;
            for (const auto& h : hom_set(X12, Y, directed)) {
                bool split_ok = true;
                for (int v = 0; v < static_cast<int>(X12.size()); ++v)
                    split_ok = split_ok && ((v < static_cast<int>(X1.size())) == (h.vertex_map[v] == 0));
                if (!split_ok)
                    continue;
                ++over;
                rep.expect(tensors.count(to_string(h)) == 1, [&] { return "morphism is not a tensor product"; });
            }
            rep.expect(over == static_cast<long>(tensors.size()),
                       [&] { return "C_S x C_T -> C_(S u T) is not a bijection on morphisms"; });
        }
    }
    return rep;
}

} // namespace ffc
