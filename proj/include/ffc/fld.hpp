#pragma once

// Genus-0 framed formal curves in tree coordinates.
//
// A curve is a tree of P^1 components over the Artin ring. Special points
// are marks, framing attachments and node ends, pairwise distinct modulo
// the maximal ideal on each component. Framing slot k carries an element
// G_k of the annuli monoid, read from the framing boundary towards the
// attachment point; an untwisted framing at a puncture is (id, 0, id).
// Every node carries an element N with nilpotent mid (the smoothing
// parameter), read from the child component towards its parent. The root
// is the host of the last slot, the outgoing one.
//
// The curve with two slots and no components is the bare annulus; it is
// stored by its monoid element.
//
// angle_i = G_i . N_1 ... N_k . reverse(G_out) along the path from slot i to
// the root.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffc/annuli.hpp"

namespace ffc {

// ---------------------------------------------------------------------------
// The projective line over R.

/// [a : b], normalized to [x : 1] when b is a unit and to [1 : y] (y
/// nilpotent) otherwise.
struct P1Point {
    RingElem a, b;

    static P1Point make(const RingElem& a, const RingElem& b) {
        if (b.is_unit())
            return {a * b.inverse(), RingElem::one(b.spec())};
        if (a.is_unit())
            return {RingElem::one(a.spec()), b * a.inverse()};
        fail("InvalidArgument", "[" + a.to_string() + " : " + b.to_string() + "] is not a point of P^1");
    }
    static P1Point affine(const RingElem& x) { return {x, RingElem::one(x.spec())}; }
    static P1Point infinity(const SpecRef& spec) { return {RingElem::one(spec), RingElem::zero(spec)}; }

    const SpecRef& spec() const { return a.spec(); }
    bool is_finite() const { return b.is_unit(); }
    P1Point reduce() const { return {a.reduce(), b.reduce()}; }
    std::string to_string() const { return is_finite() ? a.to_string() : "[1 : " + b.to_string() + "]"; }

    friend bool operator==(const P1Point&, const P1Point&) = default;
};

/// det(p, q); a unit exactly when p and q are distinct modulo m.
inline RingElem cross(const P1Point& p, const P1Point& q) { return p.a * q.b - p.b * q.a; }

inline bool distinct_mod_m(const P1Point& p, const P1Point& q) { return cross(p, q).is_unit(); }

struct Mobius {
    RingElem a, b, c, d;

    static Mobius make(RingElem a, RingElem b, RingElem c, RingElem d) {
        if (!(a * d - b * c).is_unit())
            fail("InvalidArgument", "Mobius transformation is not invertible");
        return {std::move(a), std::move(b), std::move(c), std::move(d)};
    }
    static Mobius identity(const SpecRef& s) {
        return {RingElem::one(s), RingElem::zero(s), RingElem::zero(s), RingElem::one(s)};
    }

    P1Point operator()(const P1Point& p) const { return P1Point::make(a * p.a + b * p.b, c * p.a + d * p.b); }
};

/// The unique Mobius map sending p0, p1, pinf to 0, 1, infinity.
inline Mobius to_standard(const P1Point& p0, const P1Point& p1, const P1Point& pinf) {
    // x -> [l0(x) linf(p1) : linf(x) l0(p1)], l(x) = det(x, p)
    RingElem c1 = cross(p1, pinf), c2 = cross(p1, p0);
    return Mobius::make(c1 * p0.b, -(c1 * p0.a), c2 * pinf.b, -(c2 * pinf.a));
}

// ---------------------------------------------------------------------------
// Curves.

struct Node {
    int child = 0, parent = 0;
    P1Point child_point, parent_point;
    NormalForm annulus;
    friend bool operator==(const Node&, const Node&) = default;
};

struct Framing {
    int host = 0;
    P1Point point;
    NormalForm data;
    friend bool operator==(const Framing&, const Framing&) = default;
};

struct Mark {
    int host = 0;
    P1Point point;
    friend bool operator==(const Mark&, const Mark&) = default;
};

struct StableTreeCurve {
    SpecRef spec;
    int num_components = 0;
    std::vector<Node> edges;
    std::vector<Framing> framings; ///< slot k is framings[k]; the last is outgoing
    std::vector<Mark> marks;
    std::optional<NormalForm> bare; ///< set exactly for the bare annulus

    int num_slots() const { return bare ? 2 : static_cast<int>(framings.size()); }
    int arity() const { return num_slots() - 1; }
    int root() const { return framings.back().host; }

    static StableTreeCurve bare_annulus(const NormalForm& a) {
        if (!a.mid.is_nilpotent())
            fail("InvalidArgument", "an annulus needs a nilpotent smoothing parameter");
        StableTreeCurve c;
        c.spec = a.spec();
        c.bare = a;
        return c;
    }

    friend bool operator==(const StableTreeCurve& x, const StableTreeCurve& y) {
        return same_spec(x.spec, y.spec) && x.num_components == y.num_components && x.edges == y.edges &&
               x.framings == y.framings && x.marks == y.marks && x.bare == y.bare;
    }
};

/// A reduced stable marked tree: components, nodes between points and
/// numbered marks. Node orientation is towards the host of the last mark.
struct MarkedTree {
    int num_components = 0;
    std::vector<std::array<int, 2>> edges; ///< (child, parent)
    std::vector<std::array<P1Point, 2>> edge_points;
    std::vector<Mark> marks;
    friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const StableTreeCurve& c) {
    if (c.bare)
        return os << "bare" << *c.bare;
    os << c.num_components << (c.num_components == 1 ? " component;" : " components;");
    for (const auto& e : c.edges)
        os << " node " << e.child << "@" << e.child_point.to_string() << " -> " << e.parent << "@"
           << e.parent_point.to_string() << " " << e.annulus << ";";
    for (std::size_t k = 0; k < c.framings.size(); ++k)
        os << " slot " << k << " " << c.framings[k].host << "@" << c.framings[k].point.to_string() << " "
           << c.framings[k].data << ";";
    for (std::size_t k = 0; k < c.marks.size(); ++k)
        os << " mark " << k << " " << c.marks[k].host << "@" << c.marks[k].point.to_string() << ";";
    return os;
}

inline std::ostream& operator<<(std::ostream& os, const MarkedTree& t) {
    os << t.num_components << (t.num_components == 1 ? " component;" : " components;");
    for (std::size_t e = 0; e < t.edges.size(); ++e)
        os << " node " << t.edges[e][0] << "@" << t.edge_points[e][0].to_string() << " -> " << t.edges[e][1] << "@"
           << t.edge_points[e][1].to_string() << ";";
    for (std::size_t k = 0; k < t.marks.size(); ++k)
        os << " mark " << k << " " << t.marks[k].host << "@" << t.marks[k].point.to_string() << ";";
    return os;
}

namespace detail {

struct LabeledTree {
    int V = 0;
    std::vector<std::array<int, 2>> ends;        ///< per edge, two vertices
    std::vector<std::array<P1Point, 2>> points;  ///< per edge, point on each end
    std::vector<std::pair<int, P1Point>> labels; ///< labeled points (host, point)
    int root = 0;
};

struct Gauge {
    std::vector<int> new_id;       ///< old vertex -> canonical vertex
    std::vector<int> parent_end;   ///< per edge: which end (0 or 1) is the parent
    std::vector<Mobius> mobius;    ///< per old vertex
};

/// Canonical vertex order and per-component normalization. Every special
/// point is keyed by the smallest label on its side of the tree; the three
/// smallest keys on a component go to 0, 1 and infinity.
inline Gauge canonical_gauge(const LabeledTree& t) {
    const int V = t.V, E = static_cast<int>(t.ends.size());
    if (V == 0)
        return {};
    if (E != V - 1)
        fail("InvalidCurve", "the dual graph is not a tree");
    std::vector<std::vector<std::pair<int, int>>> adj(V); // (edge, end at this vertex)
    for (int e = 0; e < E; ++e)
        for (int s = 0; s < 2; ++s) {
            int v = t.ends[e][s];
            if (v < 0 || v >= V)
                fail("InvalidCurve", "edge endpoint out of range");
            adj[v].push_back({e, s});
        }
    std::vector<int> parent_edge(V, -1), order{t.root};
    std::vector<bool> seen(V, false);
    seen[t.root] = true;
    Gauge g;
    g.parent_end.assign(E, -1);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (auto [e, s] : adj[order[k]]) {
            int w = t.ends[e][1 - s];
            if (seen[w])
                continue;
            seen[w] = true;
            parent_edge[w] = e;
            g.parent_end[e] = s;
            order.push_back(w);
        }
    if (static_cast<int>(order.size()) != V)
        fail("InvalidCurve", "the dual graph is not connected");

    const int L = static_cast<int>(t.labels.size());
    constexpr int kNone = 1 << 30;
    std::vector<int> min_sub(V, kNone);
    for (int l = 0; l < L; ++l)
        min_sub[t.labels[l].first] = std::min(min_sub[t.labels[l].first], l);
    for (int k = V - 1; k > 0; --k) {
        int v = order[k];
        int p = t.ends[parent_edge[v]][g.parent_end[parent_edge[v]]];
        min_sub[p] = std::min(min_sub[p], min_sub[v]);
    }
    // in_sub[v][l]: label l lies in the subtree of v
    std::vector<std::vector<bool>> in_sub(V, std::vector<bool>(L, false));
    for (int l = 0; l < L; ++l) {
        int v = t.labels[l].first;
        while (true) {
            in_sub[v][l] = true;
            if (parent_edge[v] < 0)
                break;
            v = t.ends[parent_edge[v]][g.parent_end[parent_edge[v]]];
        }
    }

    // Special points of each vertex with their keys.
    std::vector<std::vector<std::pair<int, P1Point>>> special(V);
    for (int l = 0; l < L; ++l)
        special[t.labels[l].first].push_back({l, t.labels[l].second});
    for (int e = 0; e < E; ++e) {
        int pe = g.parent_end[e];
        int parent = t.ends[e][pe], child = t.ends[e][1 - pe];
        special[parent].push_back({min_sub[child], t.points[e][pe]});
        int outside = kNone;
        for (int l = 0; l < L; ++l)
            if (!in_sub[child][l]) {
                outside = l;
                break;
            }
        special[child].push_back({outside, t.points[e][1 - pe]});
    }
    g.mobius.reserve(V);
    for (int v = 0; v < V; ++v) {
        auto& sp = special[v];
        if (sp.size() < 3)
            fail("UnstableCurve", "component " + std::to_string(v) + " has " + std::to_string(sp.size()) +
                                      " special points");
        for (std::size_t x = 0; x < sp.size(); ++x) {
            if (sp[x].first == kNone)
                fail("InvalidCurve", "a branch of the tree carries no label");
            for (std::size_t y = x + 1; y < sp.size(); ++y)
                if (!distinct_mod_m(sp[x].second, sp[y].second))
                    fail("InvalidCurve", "special points collide modulo the maximal ideal on component " +
                                             std::to_string(v));
        }
        std::sort(sp.begin(), sp.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        g.mobius.push_back(to_standard(sp[0].second, sp[1].second, sp[2].second));
    }

    // Depth-first order, children by smallest label.
    std::vector<std::vector<int>> children(V);
    for (int k = 1; k < V; ++k) {
        int v = order[k];
        children[t.ends[parent_edge[v]][g.parent_end[parent_edge[v]]]].push_back(v);
    }
    g.new_id.assign(V, -1);
    int next = 0;
    auto dfs = [&](auto&& self, int v) -> void {
        g.new_id[v] = next++;
        auto& ch = children[v];
        std::sort(ch.begin(), ch.end(), [&](int x, int y) { return min_sub[x] < min_sub[y]; });
        for (int c : ch)
            self(self, c);
    };
    dfs(dfs, t.root);
    return g;
}

inline void require_nilpotent_mid(const NormalForm& a, const char* what) {
    if (!a.mid.is_nilpotent())
        fail("InvalidCurve", std::string(what) + " must have a nilpotent mid, got " + a.mid.to_string());
}

inline LabeledTree labeled_tree(const StableTreeCurve& c) {
    LabeledTree t;
    t.V = c.num_components;
    for (const auto& e : c.edges) {
        t.ends.push_back({e.child, e.parent});
        t.points.push_back({e.child_point, e.parent_point});
    }
    for (const auto& f : c.framings)
        t.labels.push_back({f.host, f.point});
    for (const auto& m : c.marks)
        t.labels.push_back({m.host, m.point});
    t.root = c.framings.back().host;
    return t;
}

} // namespace detail

/// Throws InvalidCurve or UnstableCurve.
inline void validate(const StableTreeCurve& c) {
    if (!c.spec)
        fail("InvalidCurve", "curve has no ring");
    if (c.bare) {
        if (c.num_components || !c.edges.empty() || !c.framings.empty() || !c.marks.empty())
            fail("InvalidCurve", "a bare annulus has no components");
        require_same_spec(c.spec, c.bare->spec());
        detail::require_nilpotent_mid(*c.bare, "a bare annulus");
        return;
    }
    if (c.num_components < 1)
        fail("InvalidCurve", "a curve needs a component or must be a bare annulus");
    if (c.framings.empty())
        fail("InvalidCurve", "a curve needs an outgoing framing");
    auto host_ok = [&](int h) { return h >= 0 && h < c.num_components; };
    for (const auto& f : c.framings) {
        if (!host_ok(f.host))
            fail("InvalidCurve", "framing host out of range");
        require_same_spec(c.spec, f.data.spec());
        require_same_spec(c.spec, f.point.spec());
        detail::require_nilpotent_mid(f.data, "framing data");
    }
    for (const auto& m : c.marks)
        if (!host_ok(m.host))
            fail("InvalidCurve", "mark host out of range");
    std::vector<int> parents(c.num_components, 0);
    for (const auto& e : c.edges) {
        if (!host_ok(e.child) || !host_ok(e.parent))
            fail("InvalidCurve", "node endpoint out of range");
        require_same_spec(c.spec, e.annulus.spec());
        detail::require_nilpotent_mid(e.annulus, "node data");
        ++parents[e.child];
    }
    auto g = detail::canonical_gauge(detail::labeled_tree(c));
    for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
        if (g.parent_end[e] != 1)
            fail("InvalidCurve", "nodes must point towards the outgoing component");
}

/// Apply a Mobius transformation to every special point of one component.
inline StableTreeCurve move_component(StableTreeCurve c, int v, const Mobius& m) {
    for (auto& e : c.edges) {
        if (e.child == v)
            e.child_point = m(e.child_point);
        if (e.parent == v)
            e.parent_point = m(e.parent_point);
    }
    for (auto& f : c.framings)
        if (f.host == v)
            f.point = m(f.point);
    for (auto& mk : c.marks)
        if (mk.host == v)
            mk.point = m(mk.point);
    return c;
}

/// The representative with canonical component order whose three first
/// special points on every component sit at 0, 1, infinity.
inline StableTreeCurve canonicalize(const StableTreeCurve& c) {
    validate(c);
    if (c.bare)
        return c;
    auto g = detail::canonical_gauge(detail::labeled_tree(c));
    StableTreeCurve out;
    out.spec = c.spec;
    out.num_components = c.num_components;
    std::vector<Node> edges(c.edges.size());
    for (const auto& e : c.edges) {
        Node n{g.new_id[e.child], g.new_id[e.parent], g.mobius[e.child](e.child_point),
               g.mobius[e.parent](e.parent_point), e.annulus};
        edges[n.child - 1] = std::move(n); // the root is 0; every other vertex has one parent edge
    }
    out.edges = std::move(edges);
    for (const auto& f : c.framings)
        out.framings.push_back({g.new_id[f.host], g.mobius[f.host](f.point), f.data});
    for (const auto& m : c.marks)
        out.marks.push_back({g.new_id[m.host], g.mobius[m.host](m.point)});
    return out;
}

/// X o_i Y: the outgoing slot of Y glued to incoming slot i (0-based) of X.
/// Slots of the result: X's before i, Y's incoming slots, X's after i,
/// X's outgoing slot. Marks: X's, then Y's.
inline StableTreeCurve stable_glue(const StableTreeCurve& x, int i, const StableTreeCurve& y) {
    validate(x);
    validate(y);
    require_same_spec(x.spec, y.spec);
    if (i < 0 || i >= x.arity())
        fail("SlotOutOfRange", "slot " + std::to_string(i + 1) + " is not an incoming slot of a curve with " +
                                   std::to_string(x.arity()) + " inputs");
    if (x.bare && y.bare)
        return StableTreeCurve::bare_annulus(*y.bare * *x.bare);
    if (y.bare) {
        StableTreeCurve out = x;
        out.framings[i].data = *y.bare * x.framings[i].data;
        return canonicalize(out);
    }
    if (x.bare) {
        StableTreeCurve out = y;
        out.framings.back().data = reverse(*x.bare) * y.framings.back().data;
        return canonicalize(out);
    }
    const int off = x.num_components;
    StableTreeCurve out;
    out.spec = x.spec;
    out.num_components = x.num_components + y.num_components;
    out.edges = x.edges;
    for (Node e : y.edges) {
        e.child += off;
        e.parent += off;
        out.edges.push_back(std::move(e));
    }
    const Framing& fx = x.framings[i];
    const Framing& fy = y.framings.back();
    out.edges.push_back(Node{fy.host + off, fx.host, fy.point, fx.point, reverse(fy.data) * fx.data});
    for (int k = 0; k < i; ++k)
        out.framings.push_back(x.framings[k]);
    for (int k = 0; k + 1 < y.num_slots(); ++k) {
        Framing f = y.framings[k];
        f.host += off;
        out.framings.push_back(std::move(f));
    }
    for (int k = i + 1; k < x.num_slots(); ++k)
        out.framings.push_back(x.framings[k]);
    out.marks = x.marks;
    for (Mark m : y.marks) {
        m.host += off;
        out.marks.push_back(std::move(m));
    }
    return canonicalize(out);
}

/// Precompose the framing of slot k with an annulus (a unit mid is
/// allowed): G_k -> A . G_k.
inline StableTreeCurve annulus_act(const NormalForm& a, const StableTreeCurve& x, int k) {
    validate(x);
    require_same_spec(a.spec(), x.spec);
    if (k < 0 || k >= x.num_slots())
        fail("SlotOutOfRange", "slot " + std::to_string(k + 1) + " out of range");
    if (x.bare)
        return StableTreeCurve::bare_annulus(k == 0 ? a * *x.bare : *x.bare * reverse(a));
    StableTreeCurve out = x;
    out.framings[k].data = a * x.framings[k].data;
    return out;
}

/// The annuli-monoid element measuring incoming slot i against the
/// outgoing slot.
inline NormalForm angle(const StableTreeCurve& x, int i) {
    validate(x);
    if (i < 0 || i >= x.arity())
        fail("SlotOutOfRange", "slot " + std::to_string(i + 1) + " is not an incoming slot");
    if (x.bare)
        return *x.bare;
    std::vector<int> parent_edge(x.num_components, -1);
    for (int e = 0; e < static_cast<int>(x.edges.size()); ++e)
        parent_edge[x.edges[e].child] = e;
    NormalForm acc = x.framings[i].data;
    for (int v = x.framings[i].host; parent_edge[v] >= 0; v = x.edges[parent_edge[v]].parent)
        acc = acc * x.edges[parent_edge[v]].annulus;
    return acc * reverse(x.framings.back().data);
}

inline std::vector<NormalForm> comm_g_map(const StableTreeCurve& x) {
    std::vector<NormalForm> out;
    for (int i = 0; i < x.arity(); ++i)
        out.push_back(angle(x, i));
    return out;
}

/// Renumber the incoming slots: new slot sigma[k] is old slot k.
inline StableTreeCurve relabel_inputs(const StableTreeCurve& x, const std::vector<int>& sigma) {
    validate(x);
    if (static_cast<int>(sigma.size()) != x.arity())
        fail("InvalidArgument", "permutation size differs from the arity");
    if (x.bare)
        return x;
    StableTreeCurve out = x;
    std::vector<bool> used(sigma.size(), false);
    for (int k = 0; k < x.arity(); ++k) {
        if (sigma[k] < 0 || sigma[k] >= x.arity() || used[sigma[k]])
            fail("InvalidArgument", "not a permutation");
        used[sigma[k]] = true;
        out.framings[sigma[k]] = x.framings[k];
    }
    return canonicalize(out);
}

/// New mark sigma[k] is old mark k.
inline StableTreeCurve relabel_marks(const StableTreeCurve& x, const std::vector<int>& sigma) {
    validate(x);
    if (sigma.size() != x.marks.size())
        fail("InvalidArgument", "permutation size differs from the number of marks");
    StableTreeCurve out = x;
    std::vector<bool> used(sigma.size(), false);
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (sigma[k] < 0 || sigma[k] >= static_cast<int>(sigma.size()) || used[sigma[k]])
            fail("InvalidArgument", "not a permutation");
        used[sigma[k]] = true;
        out.marks[sigma[k]] = x.marks[k];
    }
    return canonicalize(out);
}

/// Reduction modulo the maximal ideal.
inline StableTreeCurve reduce(const StableTreeCurve& x) {
    StableTreeCurve out = x;
    if (out.bare)
        out.bare = out.bare->reduce();
    for (auto& e : out.edges) {
        e.child_point = e.child_point.reduce();
        e.parent_point = e.parent_point.reduce();
        e.annulus = e.annulus.reduce();
    }
    for (auto& f : out.framings) {
        f.point = f.point.reduce();
        f.data = f.data.reduce();
    }
    for (auto& m : out.marks)
        m.point = m.point.reduce();
    return out;
}

inline MarkedTree canonicalize(const MarkedTree& t) {
    if (t.marks.empty())
        fail("InvalidCurve", "a marked tree needs marks");
    detail::LabeledTree lt;
    lt.V = t.num_components;
    lt.ends = t.edges;
    lt.points = t.edge_points;
    for (const auto& m : t.marks)
        lt.labels.push_back({m.host, m.point});
    lt.root = t.marks.back().host;
    auto g = detail::canonical_gauge(lt);
    MarkedTree out;
    out.num_components = t.num_components;
    out.edges.resize(t.edges.size());
    out.edge_points.resize(t.edges.size());
    for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
        int pe = g.parent_end[e];
        int parent = t.edges[e][pe], child = t.edges[e][1 - pe];
        int slot = g.new_id[child] - 1;
        out.edges[slot] = {g.new_id[child], g.new_id[parent]};
        out.edge_points[slot] = {g.mobius[child](t.edge_points[e][1 - pe]), g.mobius[parent](t.edge_points[e][pe])};
    }
    for (const auto& m : t.marks)
        out.marks.push_back({g.new_id[m.host], g.mobius[m.host](m.point)});
    return out;
}

/// The reduced hourglass: every framing slot j becomes a bubble attached
/// at its point (node at infinity of the bubble) carrying the marks 0_j at
/// 0 and 1_j at 1. Marks: the curve's marks, then 0_1, 1_1, 0_2, 1_2, ...
inline MarkedTree hour_reduced(const StableTreeCurve& x) {
    validate(x);
    const SpecRef& s = x.spec;
    auto zero = P1Point::affine(RingElem::zero(s)), one = P1Point::affine(RingElem::one(s));
    auto inf = P1Point::infinity(s);
    MarkedTree t;
    if (x.bare) {
        t.num_components = 2;
        t.edges.push_back({0, 1});
        t.edge_points.push_back({inf, inf});
        t.marks = {{0, zero}, {0, one}, {1, zero}, {1, one}};
        return canonicalize(t);
    }
    StableTreeCurve r = reduce(x);
    t.num_components = r.num_components + r.num_slots();
    for (const auto& e : r.edges) {
        t.edges.push_back({e.child, e.parent});
        t.edge_points.push_back({e.child_point, e.parent_point});
    }
    for (const auto& m : r.marks)
        t.marks.push_back(m);
    for (int j = 0; j < r.num_slots(); ++j) {
        int bubble = r.num_components + j;
        t.edges.push_back({bubble, r.framings[j].host});
        t.edge_points.push_back({inf, r.framings[j].point});
        t.marks.push_back({bubble, zero});
        t.marks.push_back({bubble, one});
    }
    return canonicalize(t);
}

} // namespace ffc
