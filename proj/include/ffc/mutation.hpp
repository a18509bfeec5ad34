#pragma once

// Corrupted variants of compose_morphisms, for checking that the law and
// axiom checkers notice broken compositions.

#include <string>
#include <utility>
#include <vector>

#include "ffc/corolla_enum.hpp"

namespace ffc {

struct Mutant {
    std::string name;
    ComposeFn compose;
};

namespace detail {

enum class ChainBug { None, SameLeg, NoPassThrough, KeepMLegs };

// compose_morphisms with one deliberate defect in the flag-chasing loop.
inline CorollaMorphism compose_chain_bug(const CorollaMorphism& p, const CorollaMorphism& q, ChainBug bug) {
    if (p.target != q.source || p.directed != q.directed)
        fail("LabelMismatch", "not composable");
    const int nm = static_cast<int>(p.target.size());
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
            Flag at = p.flags[v][l].flag;
            for (int steps = 0;; ++steps) {
                if (steps > 4 * nm + 4)
                    fail("InternalError", "chain does not terminate");
                const FlagImage& qi = q.image(at);
                if (!qi.internal) {
                    Flag t = qi.flag;
                    if (bug == ChainBug::KeepMLegs)
                        t.leg = std::min(at.leg, q.target[t.corolla].degree() - 1);
                    r.flags[v][l] = FlagImage{false, t};
                    break;
                }
                Flag next = qi.flag;
                if (hit[next.corolla] || bug == ChainBug::NoPassThrough) {
                    r.flags[v][l] = FlagImage{true, reached_by[next.corolla][next.leg]};
                    break;
                }
                at = bug == ChainBug::SameLeg ? next : Flag{next.corolla, 1 - next.leg};
            }
        }
    return r;
}

inline bool is_relabeling(const CorollaMorphism& m) {
    if (m.source.size() != m.target.size())
        return false;
    for (const auto& row : m.flags)
        for (const auto& img : row)
            if (img.internal)
                return false;
    return true;
}

// Swap the images of two external flags of one source corolla that land on
// legs of the same orientation.
inline bool swap_external(CorollaMorphism& r, int v) {
    if (v < 0 || v >= static_cast<int>(r.flags.size()))
        return false;
    auto& row = r.flags[v];
    for (std::size_t a = 0; a < row.size(); ++a)
        for (std::size_t b = a + 1; b < row.size(); ++b)
            if (!row[a].internal && !row[b].internal && r.source[v].legs[a] == r.source[v].legs[b]) {
                std::swap(row[a], row[b]);
                return true;
            }
    return false;
}

// Rewire two interior edges a-b, c-d into a-d, c-b.
inline bool rewire_interior(CorollaMorphism& r) {
    std::vector<std::pair<Flag, Flag>> edges;
    for (int v = 0; v < static_cast<int>(r.flags.size()); ++v)
        for (int l = 0; l < static_cast<int>(r.flags[v].size()); ++l)
            if (r.flags[v][l].internal && Flag{v, l} < r.flags[v][l].flag)
                edges.push_back({Flag{v, l}, r.flags[v][l].flag});
    if (edges.size() < 2)
        return false;
    auto [a, b] = edges[0];
    auto [c, d] = edges[1];
    if (r.source[a.corolla].legs[a.leg] != r.source[c.corolla].legs[c.leg])
        std::swap(c, d);
    r.flags[a.corolla][a.leg].flag = d;
    r.flags[d.corolla][d.leg].flag = a;
    r.flags[c.corolla][c.leg].flag = b;
    r.flags[b.corolla][b.leg].flag = c;
    return true;
}

} // namespace detail

/// The mutation catalogue. Each entry changes composition in one way.
inline std::vector<Mutant> composition_mutants() {
    using detail::ChainBug;
    std::vector<Mutant> out;
    auto add = [&](std::string name, ComposeFn f) { out.push_back({std::move(name), std::move(f)}); };
    auto post = [&](std::string name, std::function<void(const CorollaMorphism&, const CorollaMorphism&, CorollaMorphism&)> f) {
        add(std::move(name), [f](const CorollaMorphism& p, const CorollaMorphism& q) {
            CorollaMorphism r = compose_morphisms(p, q);
            f(p, q, r);
            return r;
        });
    };

    add("open-edge pass-through keeps the leg", [](const auto& p, const auto& q) {
        return detail::compose_chain_bug(p, q, ChainBug::SameLeg);
    });
    add("no pass-through open edges", [](const auto& p, const auto& q) {
        return detail::compose_chain_bug(p, q, ChainBug::NoPassThrough);
    });
    add("target leg taken from the middle object", [](const auto& p, const auto& q) {
        return detail::compose_chain_bug(p, q, ChainBug::KeepMLegs);
    });
    post("vertex map of the first factor", [](const auto& p, const auto&, auto& r) {
        for (std::size_t v = 0; v < r.vertex_map.size(); ++v)
            r.vertex_map[v] = std::min<int>(p.vertex_map[v], static_cast<int>(r.target.size()) - 1);
    });
    post("vertex map rotated", [](const auto&, const auto&, auto& r) {
        for (auto& t : r.vertex_map)
            t = (t + 1) % static_cast<int>(r.target.size());
    });
    post("first source corolla sent to the first target", [](const auto&, const auto&, auto& r) {
        if (!r.vertex_map.empty())
            r.vertex_map[0] = 0;
    });
    post("external flags of the first corolla swapped", [](const auto&, const auto&, auto& r) {
        detail::swap_external(r, 0);
    });
    post("external flags of the last corolla swapped", [](const auto&, const auto&, auto& r) {
        detail::swap_external(r, static_cast<int>(r.flags.size()) - 1);
    });
    post("external flags swapped after a nontrivial graft", [](const auto& p, const auto& q, auto& r) {
        if (!detail::is_relabeling(p) && !detail::is_relabeling(q))
            detail::swap_external(r, 0);
    });
    post("interior edges rewired", [](const auto&, const auto&, auto& r) { detail::rewire_interior(r); });
    post("interior edges of the first factor dropped", [](const auto& p, const auto&, auto& r) {
        for (std::size_t v = 0; v < r.flags.size(); ++v)
            for (std::size_t l = 0; l < r.flags[v].size(); ++l)
                if (p.flags[v][l].internal)
                    r.flags[v][l] = FlagImage{false, Flag{r.vertex_map[v], static_cast<int>(l)}};
    });
    post("target genus incremented on new edges", [](const auto& p, const auto& q, auto& r) {
        if (!detail::is_relabeling(p) && !detail::is_relabeling(q) && !r.target.empty())
            ++r.target[r.vertex_map.empty() ? 0 : r.vertex_map[0]].genus;
    });
    add("first factor ignored when it is a relabeling", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        if (detail::is_relabeling(p) && p.vertex_map.size() == q.vertex_map.size()) {
            CorollaMorphism r = q;
            r.source = p.source;
            return r;
        }
        return compose_morphisms(p, q);
    });
    add("second factor ignored when it is a relabeling", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        if (detail::is_relabeling(q)) {
            CorollaMorphism r = p;
            r.target = q.target;
            return r;
        }
        return compose_morphisms(p, q);
    });
    add("factors swapped on endomorphisms", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        if (p.source == p.target && q.source == q.target)
            return compose_morphisms(q, p);
        return compose_morphisms(p, q);
    });
    add("left-nested graft reversed", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        // wrong only when the first factor already has interior edges
        CorollaMorphism r = compose_morphisms(p, q);
        if (!detail::is_relabeling(p))
            detail::swap_external(r, 0);
        return r;
    });
    add("source corollas exchanged", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        CorollaMorphism r = compose_morphisms(p, q);
        if (r.source.size() >= 2 && r.source[0] == r.source[1]) {
            std::swap(r.vertex_map[0], r.vertex_map[1]);
            std::swap(r.flags[0], r.flags[1]);
            for (auto& row : r.flags)
                for (auto& img : row)
                    if (img.internal && img.flag.corolla < 2)
                        img.flag.corolla = 1 - img.flag.corolla;
        }
        return r;
    });
    add("orientation dropped", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        return compose_morphisms(forget_orientation(p), forget_orientation(q));
    });
    add("composite without grafting", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        CorollaMorphism r = compose_morphisms(p, q);
        if (!detail::is_relabeling(q))
            r.flags = p.flags;
        return r;
    });
    add("target taken from the first factor", [](const CorollaMorphism& p, const CorollaMorphism& q) {
        CorollaMorphism r = compose_morphisms(p, q);
        if (!detail::is_relabeling(q))
            r.target = p.target;
        return r;
    });
    return out;
}

struct MutationResult {
    std::string name;
    bool detected = false;
    long failures = 0;
};

/// Run the law and axiom checkers on every mutant, in both the directed
/// and the undirected category.
inline std::vector<MutationResult> run_mutation_harness(const CorollaBounds& b) {
    std::vector<MutationResult> out;
    for (const auto& m : composition_mutants()) {
        MutationResult res{m.name};
        for (bool directed : {true, false}) {
            res.failures += check_category_laws(b, directed, m.compose).failed;
            res.failures += check_operadic_axioms(b, directed, m.compose).failed;
        }
        res.detected = res.failures > 0;
        out.push_back(res);
    }
    return out;
}

} // namespace ffc
