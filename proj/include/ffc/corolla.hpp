#pragma once

// Graphs with half-edges, corolla collapse and splitting, and the colored
// operads of labeled modular multicorollas (directed and undirected).
//
// A graph has vertices 0..V-1 and the base vertex * (kBase). Every edge e
// has a source i(e) and target f(e) in V u {*}. Half-edges have one end at
// *, open edges both. Composition of morphisms can also produce closed
// loops without vertices ("circles"); a graph keeps a count of those.
//
// A morphism M -> N is stored flag-wise: each leg of each source corolla
// is either paired with another source leg (an interior edge) or sent to a
// leg of a target corolla (a half-edge). Target corollas not hit by any
// source corolla are open edges or circles.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffc/error.hpp"

namespace ffc {

inline constexpr int kBase = -1;

struct Graph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges; ///< (i(e), f(e)), kBase for *
    int circles = 0;

    bool is_interior(int e) const { return edges[e].first != kBase && edges[e].second != kBase; }
    bool is_open(int e) const { return edges[e].first == kBase && edges[e].second == kBase; }

    friend bool operator==(const Graph&, const Graph&) = default;
};

struct ModularGraph {
    Graph graph;
    std::vector<int> genus;

    int num_vertices() const { return graph.num_vertices; }
    friend bool operator==(const ModularGraph&, const ModularGraph&) = default;
};

inline void validate(const ModularGraph& g) {
    if (static_cast<int>(g.genus.size()) != g.graph.num_vertices)
        fail("InvalidGraph", "genus must be given for every vertex");
    for (int x : g.genus)
        if (x < 0)
            fail("InvalidGraph", "negative genus");
    for (auto [a, b] : g.graph.edges)
        for (int x : {a, b})
            if (x != kBase && (x < 0 || x >= g.graph.num_vertices))
                fail("InvalidGraph", "edge endpoint out of range");
    if (g.graph.circles < 0)
        fail("InvalidGraph", "negative circle count");
}

/// Leg orientation relative to its vertex. Undirected corollas use Free.
enum class Leg : std::uint8_t { In, Out, Free };

inline Leg opposite(Leg l) { return l == Leg::In ? Leg::Out : l == Leg::Out ? Leg::In : Leg::Free; }

inline char leg_char(Leg l) { return l == Leg::In ? 'i' : l == Leg::Out ? 'o' : 'u'; }

struct Corolla {
    int genus = 0;
    std::vector<Leg> legs; ///< leg label k+1 is legs[k]

    int count(Leg l) const { return static_cast<int>(std::count(legs.begin(), legs.end(), l)); }
    int degree() const { return static_cast<int>(legs.size()); }

    friend auto operator<=>(const Corolla&, const Corolla&) = default;
};

using Multicorolla = std::vector<Corolla>;

inline std::string to_string(const Corolla& c) {
    std::string s = "g" + std::to_string(c.genus) + ":";
    for (Leg l : c.legs)
        s += leg_char(l);
    return s;
}

inline std::string to_string(const Multicorolla& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i)
        s += (i ? " " : "") + to_string(m[i]);
    return s + "}";
}

/// An open edge seen as a corolla: genus 0, two legs (one in, one out when
/// directed).
inline bool is_open_edge_shape(const Corolla& c) {
    if (c.genus != 0 || c.legs.size() != 2)
        return false;
    return (c.count(Leg::Free) == 2) || (c.count(Leg::In) == 1 && c.count(Leg::Out) == 1);
}

inline bool is_circle_shape(const Corolla& c) { return c.genus == 1 && c.legs.empty(); }

// ---------------------------------------------------------------------------
// Connected components, cycle rank, collapse and splitting.

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace detail

/// Component index of every vertex in the interior graph, components
/// numbered by their smallest vertex.
inline std::vector<int> interior_components(const Graph& g, int* count = nullptr) {
    detail::UnionFind uf(g.num_vertices);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.is_interior(e))
            uf.unite(g.edges[e].first, g.edges[e].second);
    std::vector<int> comp(g.num_vertices, -1), root_id(g.num_vertices, -1);
    int n = 0;
    for (int v = 0; v < g.num_vertices; ++v) {
        int r = uf.find(v);
        if (root_id[r] < 0)
            root_id[r] = n++;
        comp[v] = root_id[r];
    }
    if (count)
        *count = n;
    return comp;
}

/// b1 = E - V + #components of the interior.
inline int betti1(const Graph& g) {
    int comps = 0;
    interior_components(g, &comps);
    int e_int = 0;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        e_int += g.is_interior(e);
    return e_int - g.num_vertices + comps + g.circles;
}

/// Where a leg of a collapsed corolla comes from.
struct CollapseLeg {
    int edge;
    bool at_source; ///< the leg is the i(e) = * end (incoming) if false
};

struct Collapse {
    Multicorolla corollas;
    std::vector<int> vertex_corolla;             ///< component of each vertex
    std::vector<std::vector<int>> leg_edges;     ///< per corolla, edge of each leg
    int num_vertex_components = 0;
};

/// C(G): one corolla per connected component. Components with vertices come
/// first ordered by smallest vertex; then open edges by edge id; then
/// circles. Legs follow edge ids. Genus is sum of vertex genera plus b1 of
/// the interior.
inline Collapse collapse(const ModularGraph& mg, bool directed) {
    validate(mg);
    const Graph& g = mg.graph;
    Collapse out;
    int comps = 0;
    out.vertex_corolla = interior_components(g, &comps);
    out.num_vertex_components = comps;
    out.corollas.assign(comps, Corolla{});
    out.leg_edges.assign(comps, {});
    std::vector<int> comp_vertices(comps, 0), comp_edges(comps, 0);
    for (int v = 0; v < g.num_vertices; ++v) {
        out.corollas[out.vertex_corolla[v]].genus += mg.genus[v];
        ++comp_vertices[out.vertex_corolla[v]];
    }
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        auto [a, b] = g.edges[e];
        if (g.is_interior(e)) {
            ++comp_edges[out.vertex_corolla[a]];
        } else if (a != kBase) { // v -> *: outgoing half-edge
            int c = out.vertex_corolla[a];
            out.corollas[c].legs.push_back(directed ? Leg::Out : Leg::Free);
            out.leg_edges[c].push_back(e);
        } else if (b != kBase) { // * -> v: incoming half-edge
            int c = out.vertex_corolla[b];
            out.corollas[c].legs.push_back(directed ? Leg::In : Leg::Free);
            out.leg_edges[c].push_back(e);
        }
    }
    for (int c = 0; c < comps; ++c)
        out.corollas[c].genus += comp_edges[c] - comp_vertices[c] + 1;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.is_open(e)) {
            Leg in = directed ? Leg::In : Leg::Free, outl = directed ? Leg::Out : Leg::Free;
            out.corollas.push_back(Corolla{0, {in, outl}});
            out.leg_edges.push_back({e, e});
        }
    for (int k = 0; k < g.circles; ++k) {
        out.corollas.push_back(Corolla{1, {}});
        out.leg_edges.push_back({});
    }
    return out;
}

/// The splitting G_!S: an edge of multiplicity n becomes e_0..e_n with
/// i(e_0) = i(e), f(e_n) = f(e), all other ends at *. e_0 keeps the id of
/// e; e_1..e_n are appended in order.
inline ModularGraph split(const ModularGraph& mg, const std::vector<int>& multiplicity) {
    validate(mg);
    const auto& edges = mg.graph.edges;
    if (multiplicity.size() != edges.size())
        fail("InvalidArgument", "split needs one multiplicity per edge");
    ModularGraph out = mg;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int n = multiplicity[e];
        if (n < 0)
            fail("InvalidArgument", "negative split multiplicity");
        if (n == 0)
            continue;
        auto [x, y] = edges[e];
        out.graph.edges[e] = {x, kBase};
        for (int k = 1; k <= n; ++k)
            out.graph.edges.emplace_back(kBase, k == n ? y : kBase);
    }
    return out;
}

inline ModularGraph full_split(const ModularGraph& mg) {
    return split(mg, std::vector<int>(mg.graph.edges.size(), 1));
}

/// Gamma_!^in: one corolla per vertex, legs in edge-id order; a self-loop
/// contributes its outgoing end, then its incoming end.
inline Multicorolla split_in(const ModularGraph& mg, bool directed) {
    validate(mg);
    Multicorolla out(mg.graph.num_vertices);
    for (int v = 0; v < mg.graph.num_vertices; ++v)
        out[v].genus = mg.genus[v];
    for (auto [a, b] : mg.graph.edges) {
        if (a != kBase)
            out[a].legs.push_back(directed ? Leg::Out : Leg::Free);
        if (b != kBase)
            out[b].legs.push_back(directed ? Leg::In : Leg::Free);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms.

struct Flag {
    int corolla = 0;
    int leg = 0;
    friend auto operator<=>(const Flag&, const Flag&) = default;
};

struct FlagImage {
    bool internal = false;
    Flag flag; ///< partner source flag, or target leg
    friend auto operator<=>(const FlagImage&, const FlagImage&) = default;
};

struct CorollaMorphism {
    bool directed = true;
    Multicorolla source;
    Multicorolla target;
    std::vector<int> vertex_map;                ///< source corolla -> target corolla
    std::vector<std::vector<FlagImage>> flags;  ///< per source leg

    const FlagImage& image(Flag f) const { return flags[f.corolla][f.leg]; }

    friend bool operator==(const CorollaMorphism&, const CorollaMorphism&) = default;
};

namespace detail {

inline bool legs_compatible(bool directed, Leg a, Leg b) {
    return directed ? (a != Leg::Free && a == b) : (a == Leg::Free && b == Leg::Free);
}

inline bool pair_compatible(bool directed, Leg a, Leg b) {
    return directed ? ((a == Leg::In && b == Leg::Out) || (a == Leg::Out && b == Leg::In))
                    : (a == Leg::Free && b == Leg::Free);
}

[[noreturn]] inline void bad_morphism(const std::string& why) { fail("InvalidMorphism", why); }

} // namespace detail

/// Component of each source corolla under the interior edges, numbered by
/// smallest corolla.
inline std::vector<int> source_components(const CorollaMorphism& m, int* count = nullptr) {
    detail::UnionFind uf(static_cast<int>(m.source.size()));
    for (int v = 0; v < static_cast<int>(m.flags.size()); ++v)
        for (const auto& img : m.flags[v])
            if (img.internal)
                uf.unite(v, img.flag.corolla);
    std::vector<int> comp(m.source.size()), id(m.source.size(), -1);
    int n = 0;
    for (int v = 0; v < static_cast<int>(m.source.size()); ++v) {
        int r = uf.find(v);
        if (id[r] < 0)
            id[r] = n++;
        comp[v] = id[r];
    }
    if (count)
        *count = n;
    return comp;
}

inline int count_interior_edges(const CorollaMorphism& m) {
    int twice = 0;
    for (const auto& legs : m.flags)
        for (const auto& img : legs)
            twice += img.internal;
    return twice / 2;
}

/// Throws InvalidMorphism describing the first violated condition.
inline void validate(const CorollaMorphism& m) {
    using detail::bad_morphism;
    const int ns = static_cast<int>(m.source.size()), nt = static_cast<int>(m.target.size());
    for (const auto* side : {&m.source, &m.target})
        for (const auto& c : *side) {
            if (c.genus < 0)
                bad_morphism("negative genus");
            for (Leg l : c.legs)
                if ((l == Leg::Free) == m.directed)
                    bad_morphism("leg orientation does not match the category");
        }
    if (static_cast<int>(m.vertex_map.size()) != ns || static_cast<int>(m.flags.size()) != ns)
        bad_morphism("vertex map and flag table must cover the source");
    std::vector<std::vector<int>> hits(nt);
    for (int t = 0; t < nt; ++t)
        hits[t].assign(m.target[t].legs.size(), 0);
    for (int v = 0; v < ns; ++v) {
        if (m.vertex_map[v] < 0 || m.vertex_map[v] >= nt)
            bad_morphism("vertex map out of range");
        if (m.flags[v].size() != m.source[v].legs.size())
            bad_morphism("flag table does not match corolla degree");
        for (int l = 0; l < static_cast<int>(m.flags[v].size()); ++l) {
            const FlagImage& img = m.flags[v][l];
            Leg leg = m.source[v].legs[l];
            if (img.internal) {
                Flag p = img.flag;
                if (p.corolla < 0 || p.corolla >= ns || p.leg < 0 || p.leg >= m.source[p.corolla].degree())
                    bad_morphism("interior partner out of range");
                if (p == Flag{v, l})
                    bad_morphism("leg paired with itself");
                const FlagImage& back = m.image(p);
                if (!back.internal || back.flag != Flag{v, l})
                    bad_morphism("interior pairing is not symmetric");
                if (!detail::pair_compatible(m.directed, leg, m.source[p.corolla].legs[p.leg]))
                    bad_morphism("interior edge joins incompatible orientations");
                if (m.vertex_map[v] != m.vertex_map[p.corolla])
                    bad_morphism("interior edge between corollas with different images");
            } else {
                Flag t = img.flag;
                if (t.corolla < 0 || t.corolla >= nt || t.leg < 0 || t.leg >= m.target[t.corolla].degree())
                    bad_morphism("target leg out of range");
                if (t.corolla != m.vertex_map[v])
                    bad_morphism("half-edge lands on the wrong target corolla");
                if (!detail::legs_compatible(m.directed, leg, m.target[t.corolla].legs[t.leg]))
                    bad_morphism("half-edge orientation not preserved");
                ++hits[t.corolla][t.leg];
            }
        }
    }
    int comps = 0;
    auto comp = source_components(m, &comps);
    std::vector<int> comp_target(comps, -1), genus(comps, 0), verts(comps, 0), edges2(comps, 0);
    for (int v = 0; v < ns; ++v) {
        int c = comp[v];
        comp_target[c] = m.vertex_map[v];
        genus[c] += m.source[v].genus;
        ++verts[c];
        for (const auto& img : m.flags[v])
            edges2[c] += img.internal;
    }
    std::vector<int> target_comp(nt, -1);
    for (int c = 0; c < comps; ++c) {
        int t = comp_target[c];
        if (target_comp[t] >= 0)
            bad_morphism("two components map to one target corolla");
        target_comp[t] = c;
        int g = genus[c] + edges2[c] / 2 - verts[c] + 1;
        if (g != m.target[t].genus)
            bad_morphism("target genus differs from collapsed genus");
    }
    for (int t = 0; t < nt; ++t) {
        if (target_comp[t] >= 0) {
            for (int h : hits[t])
                if (h != 1)
                    bad_morphism("target leg not hit exactly once");
        } else if (!is_open_edge_shape(m.target[t]) && !is_circle_shape(m.target[t])) {
            bad_morphism("target corolla " + std::to_string(t + 1) +
                         " is neither hit nor an open edge or circle");
        }
    }
}

inline CorollaMorphism identity_morphism(const Multicorolla& m, bool directed) {
    CorollaMorphism id{directed, m, m, {}, {}};
    for (int v = 0; v < static_cast<int>(m.size()); ++v) {
        id.vertex_map.push_back(v);
        id.flags.emplace_back();
        for (int l = 0; l < m[v].degree(); ++l)
            id.flags[v].push_back(FlagImage{false, {v, l}});
    }
    validate(id);
    return id;
}

/// The morphism Gamma_!^in -> C(Gamma) with the canonical labelings of
/// split_in and collapse.
inline CorollaMorphism morphism_from_graph(const ModularGraph& mg, bool directed) {
    Collapse col = collapse(mg, directed);
    CorollaMorphism m{directed, split_in(mg, directed), col.corollas, col.vertex_corolla, {}};
    const Graph& g = mg.graph;
    const int E = static_cast<int>(g.edges.size());
    // Position of each edge end among the legs of its vertex.
    std::vector<int> src_leg(E, -1), dst_leg(E, -1), deg(g.num_vertices, 0);
    for (int e = 0; e < E; ++e) {
        auto [a, b] = g.edges[e];
        if (a != kBase)
            src_leg[e] = deg[a]++;
        if (b != kBase)
            dst_leg[e] = deg[b]++;
    }
    m.flags.resize(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v)
        m.flags[v].resize(deg[v]);
    for (int c = 0; c < col.num_vertex_components; ++c)
        for (int k = 0; k < static_cast<int>(col.leg_edges[c].size()); ++k) {
            int e = col.leg_edges[c][k];
            auto [a, b] = g.edges[e];
            if (a != kBase)
                m.flags[a][src_leg[e]] = FlagImage{false, {c, k}};
            else
                m.flags[b][dst_leg[e]] = FlagImage{false, {c, k}};
        }
    for (int e = 0; e < E; ++e)
        if (g.is_interior(e)) {
            Flag s{g.edges[e].first, src_leg[e]}, d{g.edges[e].second, dst_leg[e]};
            m.flags[s.corolla][s.leg] = FlagImage{true, d};
            m.flags[d.corolla][d.leg] = FlagImage{true, s};
        }
    validate(m);
    return m;
}

/// The underlying graph: vertices are source corollas; interior edges in
/// order of their first flag, then half-edges in flag order, then open
/// edges in target order.
inline ModularGraph graph_of(const CorollaMorphism& m) {
    ModularGraph out;
    out.graph.num_vertices = static_cast<int>(m.source.size());
    for (const auto& c : m.source)
        out.genus.push_back(c.genus);
    for (int v = 0; v < static_cast<int>(m.source.size()); ++v)
        for (int l = 0; l < static_cast<int>(m.flags[v].size()); ++l) {
            const auto& img = m.flags[v][l];
            if (!img.internal || img.flag < Flag{v, l})
                continue;
            int w = img.flag.corolla;
            if (m.source[v].legs[l] == Leg::In)
                out.graph.edges.emplace_back(w, v);
            else
                out.graph.edges.emplace_back(v, w);
        }
    for (int v = 0; v < static_cast<int>(m.source.size()); ++v)
        for (int l = 0; l < static_cast<int>(m.flags[v].size()); ++l) {
            if (m.flags[v][l].internal)
                continue;
            if (m.source[v].legs[l] == Leg::In)
                out.graph.edges.emplace_back(kBase, v);
            else
                out.graph.edges.emplace_back(v, kBase);
        }
    std::vector<bool> hit(m.target.size(), false);
    for (int t : m.vertex_map)
        hit[t] = true;
    for (int t = 0; t < static_cast<int>(m.target.size()); ++t) {
        if (hit[t])
            continue;
        if (m.target[t].legs.empty())
            ++out.graph.circles;
        else
            out.graph.edges.emplace_back(kBase, kBase);
    }
    return out;
}

inline int edge_count(const CorollaMorphism& m) {
    const auto g = graph_of(m);
    return static_cast<int>(g.graph.edges.size()) + g.graph.circles;
}

/// Graft P: L -> M and Q: M -> N into Q o P: L -> N. Each leg of L follows
/// P to a leg of M, then Q; where Q reaches an M-corolla that P produces as
/// an open edge, the path continues through the other half of that edge.
inline CorollaMorphism compose_morphisms(const CorollaMorphism& p, const CorollaMorphism& q) {
    if (p.directed != q.directed)
        fail("LabelMismatch", "cannot compose directed and undirected morphisms");
    if (p.target != q.source)
        fail("LabelMismatch", "target " + to_string(p.target) + " differs from source " + to_string(q.source));
    const int nm = static_cast<int>(p.target.size());
    // For every leg of M hit by P, the L-flag that reaches it.
    std::vector<std::vector<Flag>> reached_by(nm);
    std::vector<bool> hit(nm, false);
    for (int c = 0; c < nm; ++c)
        reached_by[c].assign(p.target[c].degree(), Flag{-1, -1});
    for (int v = 0; v < static_cast<int>(p.source.size()); ++v) {
        hit[p.vertex_map[v]] = true;
        for (int l = 0; l < static_cast<int>(p.flags[v].size()); ++l)
            if (!p.flags[v][l].internal)
                reached_by[p.flags[v][l].flag.corolla][p.flags[v][l].flag.leg] = Flag{v, l};
    }

    CorollaMorphism r{p.directed, p.source, q.target, {}, p.flags};
    for (int v = 0; v < static_cast<int>(p.source.size()); ++v)
        r.vertex_map.push_back(q.vertex_map[p.vertex_map[v]]);
    for (int v = 0; v < static_cast<int>(p.source.size()); ++v)
        for (int l = 0; l < static_cast<int>(p.flags[v].size()); ++l) {
            if (p.flags[v][l].internal)
                continue;
            Flag at = p.flags[v][l].flag; // a leg of M
            for (int steps = 0;; ++steps) {
                if (steps > 4 * nm + 4)
                    fail("InternalError", "open-edge chain does not terminate");
                const FlagImage& qi = q.image(at);
                if (!qi.internal) {
                    r.flags[v][l] = FlagImage{false, qi.flag};
                    break;
                }
                Flag next = qi.flag; // another leg of M
                if (hit[next.corolla]) {
                    r.flags[v][l] = FlagImage{true, reached_by[next.corolla][next.leg]};
                    break;
                }
                at = Flag{next.corolla, 1 - next.leg}; // through an open edge of P
            }
        }
    return r;
}

/// Pi: the map of component sets.
inline std::vector<int> project_to_fin(const CorollaMorphism& m) { return m.vertex_map; }

inline CorollaMorphism forget_orientation(const CorollaMorphism& m) {
    auto strip = [](Multicorolla mc) {
        for (auto& c : mc)
            std::fill(c.legs.begin(), c.legs.end(), Leg::Free);
        return mc;
    };
    CorollaMorphism out = m;
    out.directed = false;
    out.source = strip(m.source);
    out.target = strip(m.target);
    return out;
}

/// Disjoint union; corollas of `b` are numbered after those of `a`.
inline CorollaMorphism tensor(const CorollaMorphism& a, const CorollaMorphism& b) {
    if (a.directed != b.directed)
        fail("LabelMismatch", "cannot take the union of directed and undirected morphisms");
    CorollaMorphism out = a;
    const int ns = static_cast<int>(a.source.size()), nt = static_cast<int>(a.target.size());
    out.source.insert(out.source.end(), b.source.begin(), b.source.end());
    out.target.insert(out.target.end(), b.target.begin(), b.target.end());
    for (int t : b.vertex_map)
        out.vertex_map.push_back(t + nt);
    for (const auto& legs : b.flags) {
        out.flags.emplace_back();
        for (FlagImage img : legs) {
            img.flag.corolla += img.internal ? ns : nt;
            out.flags.back().push_back(img);
        }
    }
    return out;
}

/// The isomorphism M -> M' where corolla v of M becomes corolla perm[v] of
/// M' and its leg l becomes leg leg_perm[v][l].
inline CorollaMorphism relabeling(const Multicorolla& m, const std::vector<int>& perm,
                                  const std::vector<std::vector<int>>& leg_perm, bool directed) {
    const int n = static_cast<int>(m.size());
    if (static_cast<int>(perm.size()) != n || static_cast<int>(leg_perm.size()) != n)
        fail("InvalidArgument", "relabeling must cover every corolla");
    CorollaMorphism out{directed, m, Multicorolla(n), perm, {}};
    for (int v = 0; v < n; ++v) {
        if (perm[v] < 0 || perm[v] >= n || static_cast<int>(leg_perm[v].size()) != m[v].degree())
            fail("InvalidArgument", "malformed relabeling");
        Corolla& c = out.target[perm[v]];
        c.genus = m[v].genus;
        c.legs.assign(m[v].legs.size(), Leg::Free);
        out.flags.emplace_back();
        for (int l = 0; l < m[v].degree(); ++l) {
            c.legs[leg_perm[v][l]] = m[v].legs[l];
            out.flags[v].push_back(FlagImage{false, {perm[v], leg_perm[v][l]}});
        }
    }
    validate(out);
    return out;
}

/// Inverse of a relabeling isomorphism.
inline CorollaMorphism inverse_relabeling(const CorollaMorphism& r) {
    const int n = static_cast<int>(r.source.size());
    std::vector<int> perm(n);
    std::vector<std::vector<int>> legs(n);
    for (int v = 0; v < n; ++v) {
        int t = r.vertex_map[v];
        perm[t] = v;
        legs[t].resize(r.source[v].legs.size());
        for (int l = 0; l < r.source[v].degree(); ++l) {
            if (r.flags[v][l].internal)
                fail("InvalidArgument", "not a relabeling");
            legs[t][r.flags[v][l].flag.leg] = l;
        }
    }
    return relabeling(r.target, perm, legs, r.directed);
}

/// Restriction of a morphism to the preimage of one target corolla. The
/// source is the sub-multicorolla of corollas over `t` (in order) and the
/// target is the single corolla t.
inline CorollaMorphism restrict_to(const CorollaMorphism& m, int t) {
    std::vector<int> keep, index(m.source.size(), -1);
    for (int v = 0; v < static_cast<int>(m.source.size()); ++v)
        if (m.vertex_map[v] == t) {
            index[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    CorollaMorphism out{m.directed, {}, {m.target[t]}, {}, {}};
    for (int v : keep) {
        out.source.push_back(m.source[v]);
        out.vertex_map.push_back(0);
        out.flags.emplace_back();
        for (FlagImage img : m.flags[v]) {
            if (img.internal)
                img.flag.corolla = index[img.flag.corolla];
            else
                img.flag.corolla = 0;
            out.flags.back().push_back(img);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stability and bushes.

/// Directed: 2(m+n) + 3g >= 3. Undirected: n >= 1 or g >= 2, as stated for
/// the stable subcategory.
inline bool is_stable(const Corolla& c, bool directed) {
    if (directed)
        return 2 * c.degree() + 3 * c.genus >= 3;
    return c.degree() >= 1 || c.genus >= 2;
}

/// The geometric condition 2g - 2 + n > 0.
inline bool is_stable_geometric(const Corolla& c) { return 2 * c.genus - 2 + c.degree() > 0; }

inline bool is_stable(const Multicorolla& m, bool directed) {
    return std::all_of(m.begin(), m.end(), [&](const Corolla& c) { return is_stable(c, directed); });
}

/// Source, target and (equivalently, the source) every vertex corolla.
inline bool is_stable(const CorollaMorphism& m) {
    return is_stable(m.source, m.directed) && is_stable(m.target, m.directed);
}

inline bool is_bush(const Corolla& c, bool directed) {
    if (c.genus != 0)
        return false;
    return directed ? c.count(Leg::Out) == 1 : c.degree() >= 1;
}

inline bool is_bush(const Multicorolla& m, bool directed) {
    return std::all_of(m.begin(), m.end(), [&](const Corolla& c) { return is_bush(c, directed); });
}

/// Every component of the graph is a root-oriented tree: one outgoing
/// half-edge (the root), and from every vertex the unique outgoing edge
/// leads to the root without revisiting a vertex.
inline bool is_root_oriented_forest(const CorollaMorphism& m) {
    if (!m.directed)
        return false;
    const int n = static_cast<int>(m.source.size());
    for (int v = 0; v < n; ++v)
        if (m.source[v].count(Leg::Out) != 1)
            return false;
    int comps = 0;
    auto comp = source_components(m, &comps);
    std::vector<int> roots(comps, 0);
    for (int v = 0; v < n; ++v)
        for (int l = 0; l < m.source[v].degree(); ++l)
            if (m.source[v].legs[l] == Leg::Out && !m.flags[v][l].internal)
                ++roots[comp[v]];
    for (int r : roots)
        if (r != 1)
            return false;
    for (int v = 0; v < n; ++v) {
        std::vector<bool> seen(n, false);
        int at = v;
        while (true) {
            if (seen[at])
                return false;
            seen[at] = true;
            int out_leg = static_cast<int>(std::find(m.source[at].legs.begin(), m.source[at].legs.end(), Leg::Out) -
                                           m.source[at].legs.begin());
            const FlagImage& img = m.flags[at][out_leg];
            if (!img.internal)
                break;
            at = img.flag.corolla;
        }
    }
    return true;
}

inline bool is_bush_morphism(const CorollaMorphism& m) {
    return is_bush(m.source, m.directed) && is_bush(m.target, m.directed);
}

inline std::string to_string(const CorollaMorphism& m) {
    std::ostringstream os;
    os << to_string(m.source) << " -> " << to_string(m.target) << " [";
    for (int v = 0; v < static_cast<int>(m.flags.size()); ++v) {
        os << (v ? "; " : "") << v + 1 << "->" << m.vertex_map[v] + 1 << ":";
        for (const auto& img : m.flags[v])
            os << " " << (img.internal ? "s" : "t") << img.flag.corolla + 1 << "." << img.flag.leg + 1;
    }
    os << "]";
    return os.str();
}

} // namespace ffc
