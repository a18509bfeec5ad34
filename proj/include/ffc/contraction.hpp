#pragma once

// Evaluating a corolla morphism in an algebra over the modular-corolla
// operad by contracting its interior edges one at a time.
//
// An algebra supplies, for values living on corollas:
//   graft(ca, a, la, cb, b, lb)  contract leg la of a against leg lb of b;
//                                the result lives on ca minus la followed
//                                by cb minus lb, genus ca.g + cb.g
//   self_graft(c, a, la, lb)     contract two legs of one value; genus + 1
//   unit(c)                      the value on an open edge
//   permute(c, a, perm)          new leg k is old leg perm[k]

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ffc/corolla.hpp"
#include "ffc/witt.hpp"

namespace ffc {

/// Interior edges of a morphism as flag pairs (smaller flag first), in flag
/// order.
inline std::vector<std::pair<Flag, Flag>> interior_edges(const CorollaMorphism& m) {
    std::vector<std::pair<Flag, Flag>> out;
    for (int v = 0; v < static_cast<int>(m.flags.size()); ++v)
        for (int l = 0; l < static_cast<int>(m.flags[v].size()); ++l)
            if (m.flags[v][l].internal && Flag{v, l} < m.flags[v][l].flag)
                out.push_back({Flag{v, l}, m.flags[v][l].flag});
    return out;
}

namespace detail {

inline Corolla graft_color(const Corolla& a, int la, const Corolla& b, int lb) {
    Corolla out{a.genus + b.genus, {}};
    for (int k = 0; k < a.degree(); ++k)
        if (k != la)
            out.legs.push_back(a.legs[k]);
    for (int k = 0; k < b.degree(); ++k)
        if (k != lb)
            out.legs.push_back(b.legs[k]);
    return out;
}

inline Corolla self_graft_color(const Corolla& c, int la, int lb) {
    Corolla out{c.genus + 1, {}};
    for (int k = 0; k < c.degree(); ++k)
        if (k != la && k != lb)
            out.legs.push_back(c.legs[k]);
    return out;
}

inline Corolla permute_color(const Corolla& c, const std::vector<int>& perm) {
    Corolla out{c.genus, {}};
    for (int k : perm)
        out.legs.push_back(c.legs[k]);
    return out;
}

} // namespace detail

/// Evaluate m on one input value per source corolla, contracting interior
/// edges in the given order (indices into interior_edges(m)). Target
/// corollas that are open edges receive the unit; circles the self-graft of
/// the unit.
template <class Algebra>
std::vector<typename Algebra::Value> evaluate_contraction(const CorollaMorphism& m, const Algebra& alg,
                                                          const std::vector<typename Algebra::Value>& inputs,
                                                          const std::vector<int>& order) {
    using Value = typename Algebra::Value;
    validate(m);
    const int ns = static_cast<int>(m.source.size());
    if (static_cast<int>(inputs.size()) != ns)
        fail("InvalidArgument", "one input per source corolla is required");
    const auto edges = interior_edges(m);
    {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k < static_cast<int>(sorted.size()); ++k)
            if (sorted[k] != k)
                fail("InvalidArgument", "order must be a permutation of the interior edges");
        if (sorted.size() != edges.size())
            fail("InvalidArgument", "order must be a permutation of the interior edges");
    }

    struct Blob {
        Corolla color;
        Value value;
        std::vector<Flag> origin; ///< source flag carried by each leg
    };
    std::vector<Blob> blobs;
    std::vector<int> blob_of(ns); // per source corolla
    for (int v = 0; v < ns; ++v) {
        Blob b{m.source[v], inputs[v], {}};
        for (int l = 0; l < m.source[v].degree(); ++l)
            b.origin.push_back(Flag{v, l});
        blobs.push_back(std::move(b));
        blob_of[v] = v;
    }
    auto position = [](const Blob& b, Flag f) {
        return static_cast<int>(std::find(b.origin.begin(), b.origin.end(), f) - b.origin.begin());
    };

    for (int k : order) {
        auto [f1, f2] = edges[k];
        int x = blob_of[f1.corolla], y = blob_of[f2.corolla];
        if (x == y) {
            Blob& b = blobs[x];
            int la = position(b, f1), lb = position(b, f2);
            b.value = alg.self_graft(b.color, b.value, la, lb);
            b.color = detail::self_graft_color(b.color, la, lb);
            b.origin.erase(b.origin.begin() + std::max(la, lb));
            b.origin.erase(b.origin.begin() + std::min(la, lb));
            continue;
        }
        Blob& a = blobs[x];
        Blob& b = blobs[y];
        int la = position(a, f1), lb = position(b, f2);
        Blob merged{detail::graft_color(a.color, la, b.color, lb), alg.graft(a.color, a.value, la, b.color, b.value, lb),
                    {}};
        for (int j = 0; j < static_cast<int>(a.origin.size()); ++j)
            if (j != la)
                merged.origin.push_back(a.origin[j]);
        for (int j = 0; j < static_cast<int>(b.origin.size()); ++j)
            if (j != lb)
                merged.origin.push_back(b.origin[j]);
        int id = static_cast<int>(blobs.size());
        for (int& bo : blob_of)
            if (bo == x || bo == y)
                bo = id;
        blobs.push_back(std::move(merged));
    }

    // Per target corolla, the surviving blob that lands on it.
    const int nt = static_cast<int>(m.target.size());
    std::vector<std::optional<Value>> out(nt);
    std::vector<int> owner(nt, -1);
    for (int v = 0; v < ns; ++v)
        owner[m.vertex_map[v]] = blob_of[v];
    for (int t = 0; t < nt; ++t) {
        const Corolla& tc = m.target[t];
        if (owner[t] < 0) {
            Corolla edge = tc.legs.empty() ? Corolla{0, {m.directed ? Leg::In : Leg::Free,
                                                          m.directed ? Leg::Out : Leg::Free}}
                                           : tc;
            Value u = alg.unit(edge);
            out[t] = tc.legs.empty() ? alg.self_graft(edge, u, 0, 1) : u;
            continue;
        }
        const Blob& b = blobs[owner[t]];
        std::vector<int> perm(tc.degree(), -1);
        for (int j = 0; j < static_cast<int>(b.origin.size()); ++j) {
            Flag f = b.origin[j];
            perm[m.flags[f.corolla][f.leg].flag.leg] = j;
        }
        out[t] = alg.permute(b.color, b.value, perm);
    }
    std::vector<Value> res;
    for (auto& v : out)
        res.push_back(std::move(*v));
    return res;
}

// ---------------------------------------------------------------------------
// Algebras.

/// The terminal algebra: one element per color, recorded as the color.
struct TerminalAlgebra {
    using Value = Corolla;
    Value graft(const Corolla& ca, const Value&, int la, const Corolla& cb, const Value&, int lb) const {
        return detail::graft_color(ca, la, cb, lb);
    }
    Value self_graft(const Corolla& c, const Value&, int la, int lb) const {
        return detail::self_graft_color(c, la, lb);
    }
    Value unit(const Corolla& c) const { return c; }
    Value permute(const Corolla& c, const Value&, const std::vector<int>& perm) const {
        return detail::permute_color(c, perm);
    }
};

/// Values in Z/k counting loops: graft adds, a self-graft adds 1.
struct CountAlgebra {
    using Value = int;
    int modulus = 7;
    Value graft(const Corolla&, Value a, int, const Corolla&, Value b, int) const { return (a + b) % modulus; }
    Value self_graft(const Corolla&, Value a, int, int) const { return (a + 1) % modulus; }
    Value unit(const Corolla&) const { return 0; }
    Value permute(const Corolla&, Value a, const std::vector<int>&) const { return a; }
};

/// Genus-0 directed corollas with one outgoing leg, decorated by one
/// element of the annuli monoid per incoming leg (the Comm construction
/// over that monoid). Grafting the outgoing leg of an inner value h into
/// incoming leg i of an outer value g gives h_j * g_i on the inner legs.
struct BushAnnuliAlgebra {
    using Value = std::vector<std::optional<NormalForm>>; ///< per leg; empty on the out leg
    SpecRef spec;

    static void check_color(const Corolla& c, const Value& v) {
        if (c.genus != 0 || c.count(Leg::Out) != 1 || c.count(Leg::Free) != 0)
            fail("ColorMismatch", "annuli algebra needs genus-0 directed corollas with one output, got " + to_string(c));
        if (static_cast<int>(v.size()) != c.degree())
            fail("ColorMismatch", "value does not match the corolla " + to_string(c));
        for (int k = 0; k < c.degree(); ++k)
            if (v[k].has_value() != (c.legs[k] == Leg::In))
                fail("ColorMismatch", "decoration must sit exactly on the incoming legs");
    }

    Value graft(const Corolla& ca, const Value& a, int la, const Corolla& cb, const Value& b, int lb) const {
        check_color(ca, a);
        check_color(cb, b);
        const bool a_inner = ca.legs[la] == Leg::Out;
        if (a_inner == (cb.legs[lb] == Leg::Out))
            fail("ColorMismatch", "an edge must join an output to an input");
        const NormalForm& g = a_inner ? *b[lb] : *a[la];
        Value out;
        for (int k = 0; k < ca.degree(); ++k)
            if (k != la)
                out.push_back(a_inner && a[k] ? std::optional<NormalForm>(*a[k] * g) : a[k]);
        for (int k = 0; k < cb.degree(); ++k)
            if (k != lb)
                out.push_back(!a_inner && b[k] ? std::optional<NormalForm>(*b[k] * g) : b[k]);
        return out;
    }
    Value self_graft(const Corolla& c, const Value&, int, int) const {
        fail("ColorMismatch", "the annuli algebra has no self-grafts (genus 0), on " + to_string(c));
    }
    Value unit(const Corolla& c) const {
        if (c.legs != std::vector<Leg>{Leg::In, Leg::Out})
            fail("ColorMismatch", "open edges must be directed");
        return {NormalForm::identity(spec), std::nullopt};
    }
    Value permute(const Corolla& c, const Value& a, const std::vector<int>& perm) const {
        check_color(c, a);
        Value out;
        for (int k : perm)
            out.push_back(a[k]);
        return out;
    }
};

} // namespace ffc
