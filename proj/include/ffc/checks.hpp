#pragma once

// Property suites shared by the test binaries and `ffc --check`. Each suite
// returns an AxiomReport with the number of checks run and the first few
// counterexamples.

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "ffc/comm.hpp"
#include "ffc/contraction.hpp"
#include "ffc/corolla_enum.hpp"
#include "ffc/mutation.hpp"
#include "ffc/random.hpp"

namespace ffc {

namespace detail {

template <class T>
std::string show(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace detail

/// Round trip through the automorphism and back, and recovery of assembled
/// triples, `count` times over each of Q[e]/e^4 and Q[e1,e2]/m^4.
inline AxiomReport check_factorization(Rng& rng, int count = 1000) {
    AxiomReport rep;
    for (int m : {1, 2}) {
        auto s = make_spec(m, 3);
        for (int i = 0; i < count; ++i) {
            auto f = random_witt(s, rng);
            rep.expect(as_automorphism(birkhoff_factor(f)) == f,
                       [&] { return "factor round trip fails for " + detail::show(f); });
            auto t = random_normal_form(s, rng, MidKind::Unit);
            rep.expect(birkhoff_factor(as_automorphism(t)) == t,
                       [&] { return "factorization does not recover " + detail::show(t); });
        }
    }
    return rep;
}

/// Associativity and unit laws of the normal-ordered product on random
/// triples (zero, nilpotent and unit mids), agreement with composition when
/// both mids are units, and multiplicativity of the reduced coordinate.
inline AxiomReport check_monoid_laws(Rng& rng, int count = 1000) {
    AxiomReport rep;
    for (int m : {1, 2}) {
        auto s = make_spec(m, 3);
        auto one = NormalForm::identity(s);
        for (int i = 0; i < count; ++i) {
            auto a = random_normal_form(s, rng, MidKind::Any);
            auto b = random_normal_form(s, rng, MidKind::Any);
            auto c = random_normal_form(s, rng, MidKind::Any);
            auto ab = a * b;
            rep.expect(ab * c == a * (b * c), [&] {
                return "associativity fails for " + detail::show(a) + ", " + detail::show(b) + ", " + detail::show(c);
            });
            rep.expect(one * a == a && a * one == a, [&] { return "unit law fails for " + detail::show(a); });
            rep.expect(ab.mid.reduce() == a.mid.reduce() * b.mid.reduce(),
                       [&] { return "reduced coordinate is not multiplicative for " + detail::show(a); });
            auto ua = random_normal_form(s, rng, MidKind::Unit), ub = random_normal_form(s, rng, MidKind::Unit);
            rep.expect(ua * ub == birkhoff_factor(compose_aut(as_automorphism(ua), as_automorphism(ub))), [&] {
                return "product differs from composition for " + detail::show(ua) + ", " + detail::show(ub);
            });
        }
    }
    return rep;
}

/// Transition law T(AB) = T(B) o J o T(A) over the ring with generic
/// smoothing parameters, and specialization of the generic product back to
/// the honest one.
inline AxiomReport check_transition_oracle(Rng& rng, int count = 500) {
    AxiomReport rep;
    for (int m : {1, 2}) {
        auto s = make_spec(m, 3);
        auto g = make_spec(m, 3, {"s", "t"});
        for (int i = 0; i < count; ++i) {
            auto a = random_annulus(s, rng), b = random_annulus(s, rng);
            auto A = FramedAnnulus::generic(lift(a.alpha_in, g), RingElem::param(g, 0), lift(a.alpha_out, g));
            auto B = FramedAnnulus::generic(lift(b.alpha_in, g), RingElem::param(g, 1), lift(b.alpha_out, g));
            auto AB = glue_annuli(A, B);
            rep.expect(transition(AB) == compose_through_antipode(transition(B), transition(A)),
                       [&] { return "transition law fails for " + detail::show(a) + ", " + detail::show(b); });
            auto down_fn = [&](const RingElem& c) { return c.specialize(s, {{0, a.t}, {1, b.t}}); };
            FramedAnnulus down{NegAut::from_laurent(AB.alpha_in.map().map_coeffs(s, down_fn)), down_fn(AB.t),
                               NegAut::from_laurent(AB.alpha_out.map().map_coeffs(s, down_fn))};
            rep.expect(down == glue_annuli(a, b),
                       [&] { return "specialization differs from gluing for " + detail::show(a); });
            rep.expect(to_monoid_chart(glue_annuli(a, b)) == to_monoid_chart(a) * to_monoid_chart(b),
                       [&] { return "gluing differs from the monoid product for " + detail::show(a); });
        }
    }
    return rep;
}

/// Laws and operadic axioms in both categories, plus the fraction of
/// composition mutants the checkers catch.
inline AxiomReport check_corolla_suite(const CorollaBounds& bounds, const CorollaBounds& mutation_bounds,
                                       double min_detection = 0.95, double* detection = nullptr) {
    AxiomReport rep;
    for (bool directed : {true, false}) {
        rep.merge(check_category_laws(bounds, directed, default_compose()));
        rep.merge(check_operadic_axioms(bounds, directed, default_compose()));
    }
    auto results = run_mutation_harness(mutation_bounds);
    long caught = 0;
    for (const auto& r : results)
        caught += r.detected;
    double rate = results.empty() ? 0.0 : static_cast<double>(caught) / static_cast<double>(results.size());
    if (detection)
        *detection = rate;
    rep.expect(rate >= min_detection, [&] {
        return "mutation harness caught " + std::to_string(caught) + " of " + std::to_string(results.size());
    });
    return rep;
}

/// Evaluate every enumerated morphism in every order of its interior edges
/// and compare. The terminal algebra must land on the target colors; the
/// annuli algebra is run on the graphs it accepts (genus-0 directed
/// corollas with one output each) with random decorations.
inline AxiomReport check_contraction_orders(const CorollaBounds& terminal_bounds, const CorollaBounds& annuli_bounds,
                                            const SpecRef& spec, Rng& rng, long* annuli_graphs = nullptr) {
    AxiomReport rep;
    auto all_orders = [](int n) {
        std::vector<int> o(n);
        std::iota(o.begin(), o.end(), 0);
        std::vector<std::vector<int>> out;
        do
            out.push_back(o);
        while (std::next_permutation(o.begin(), o.end()));
        return out;
    };

    for (bool directed : {true, false})
        for (const auto& g : enumerate_graphs(terminal_bounds, directed)) {
            auto m = morphism_from_graph(g, directed);
            const int n = static_cast<int>(interior_edges(m).size());
            for (const auto& order : all_orders(n)) {
                auto got = evaluate_contraction(m, TerminalAlgebra{}, m.source, order);
                rep.expect(got == m.target, [&] { return "terminal algebra misses the target of " + to_string(m); });
            }
        }

    long accepted = 0;
    BushAnnuliAlgebra alg{spec};
    for (const auto& g : enumerate_graphs(annuli_bounds, true)) {
        auto m = morphism_from_graph(g, true);
        bool ok = true;
        for (const auto& c : m.source)
            ok = ok && c.genus == 0 && c.count(Leg::Out) == 1;
        if (!ok)
            continue;
        std::vector<BushAnnuliAlgebra::Value> inputs;
        for (const auto& c : m.source) {
            BushAnnuliAlgebra::Value v;
            for (Leg l : c.legs)
                v.push_back(l == Leg::In ? std::optional<NormalForm>(random_normal_form(spec, rng, MidKind::Any))
                                         : std::nullopt);
            inputs.push_back(std::move(v));
        }
        const int n = static_cast<int>(interior_edges(m).size());
        // a failed evaluation (a cycle) must fail in every order
        std::optional<std::vector<BushAnnuliAlgebra::Value>> first;
        const auto orders = all_orders(n);
        for (std::size_t k = 0; k < orders.size(); ++k) {
            std::optional<std::vector<BushAnnuliAlgebra::Value>> got;
            try {
                got = evaluate_contraction(m, alg, inputs, orders[k]);
            } catch (const Error& e) {
                if (e.code() != "ColorMismatch")
                    throw;
            }
            if (k == 0)
                first = got;
            else
                rep.expect(got == first, [&] { return "annuli algebra depends on the edge order for " + to_string(m); });
        }
        accepted += first.has_value();
    }
    if (annuli_graphs)
        *annuli_graphs = accepted;
    return rep;
}

namespace detail {

/// The reduced nodal union of reduced curves: disjoint union, one new node
/// with q = 0 between the out point of y and slot i of x.
inline StableTreeCurve nodal_union(const StableTreeCurve& x, int i, const StableTreeCurve& y) {
    if (x.bare || y.bare)
        fail("InvalidArgument", "nodal union is taken of curves with components");
    StableTreeCurve out;
    out.spec = x.spec;
    const int off = x.num_components;
    out.num_components = x.num_components + y.num_components;
    out.edges = x.edges;
    for (Node e : y.edges) {
        e.child += off;
        e.parent += off;
        out.edges.push_back(e);
    }
    out.edges.push_back({y.root() + off, x.framings[i].host, y.framings.back().point, x.framings[i].point,
                         NormalForm::scaling(RingElem::zero(x.spec))});
    for (int k = 0; k < x.num_slots(); ++k) {
        if (k != i) {
            out.framings.push_back(x.framings[k]);
            continue;
        }
        for (int j = 0; j < y.arity(); ++j) {
            Framing f = y.framings[j];
            f.host += off;
            out.framings.push_back(f);
        }
    }
    out.marks = x.marks;
    for (Mark m : y.marks) {
        m.host += off;
        out.marks.push_back(m);
    }
    return canonicalize(out);
}

/// Slot permutation of x o_i y induced by permuting the inputs of y by sy.
inline std::vector<int> inner_block(int ax, int i, const std::vector<int>& sy) {
    const int ay = static_cast<int>(sy.size());
    std::vector<int> p(ax + ay - 1);
    std::iota(p.begin(), p.end(), 0);
    for (int j = 0; j < ay; ++j)
        p[i + j] = i + sy[j];
    return p;
}

/// Slot permutation of x o_i y induced by permuting the inputs of x by sx.
inline std::vector<int> outer_block(int ay, int i, const std::vector<int>& sx) {
    const int ax = static_cast<int>(sx.size());
    std::vector<int> inv(ax), start(ax);
    for (int k = 0; k < ax; ++k)
        inv[sx[k]] = k;
    for (int pos = 0, n = 0; n < ax; ++n) {
        start[inv[n]] = pos;
        pos += inv[n] == i ? ay : 1;
    }
    std::vector<int> p;
    for (int k = 0; k < ax; ++k)
        for (int j = 0; j < (k == i ? ay : 1); ++j)
            p.push_back(start[k] + j);
    return p;
}

inline int pick_slot(Rng& rng, const StableTreeCurve& x) { return uniform(rng, 0, x.arity() - 1); }

} // namespace detail

/// The operad laws of framed genus-0 curves on `count` random instances
/// over Q[e1,e2]/m^4: nested and parallel associativity, equivariance,
/// angle multiplicativity, the annulus action, the reduced locus and the
/// comparison of bare annuli with glued annuli.
inline AxiomReport check_fld_suite(Rng& rng, int count = 500) {
    AxiomReport rep;
    auto s = make_spec(2, 3);
    auto maybe_bare = [&](const CurveShape& shape) {
        return detail::uniform(rng, 0, 5) == 0 ? random_bare(s, rng) : random_curve(s, rng, shape);
    };
    for (int trial = 0; trial < count; ++trial) {
        auto x = maybe_bare({3, 1, 3, 1});
        auto y = maybe_bare({2, 1, 3, 1});
        auto z = maybe_bare({2, 1, 2, 1});
        const int ax = x.arity(), ay = y.arity();
        const int i = detail::pick_slot(rng, x), j = detail::pick_slot(rng, y);
        auto xy = stable_glue(x, i, y);
        auto fail_msg = [&](const std::string& what) {
            return what + " fails for x = " + detail::show(x) + ", y = " + detail::show(y) + ", slot " +
                   std::to_string(i);
        };

        rep.expect(stable_glue(xy, i + j, z) == stable_glue(x, i, stable_glue(y, j, z)),
                   [&] { return fail_msg("nested associativity"); });

        if (ax >= 2) {
            int k = detail::uniform(rng, 0, ax - 2);
            k += k >= i;
            const int lo = std::min(i, k), hi = std::max(i, k);
            auto& first = lo == i ? y : z;
            auto& second = lo == i ? z : y;
            // glue `first` at lo and `second` at hi, in both orders; marks
            // follow the order of gluing
            auto lo_first = stable_glue(stable_glue(x, lo, first), hi + first.arity() - 1, second);
            auto hi_first = stable_glue(stable_glue(x, hi, second), lo, first);
            const int mx = static_cast<int>(x.marks.size()), m1 = static_cast<int>(first.marks.size()),
                      m2 = static_cast<int>(second.marks.size());
            std::vector<int> sigma(mx + m1 + m2);
            std::iota(sigma.begin(), sigma.begin() + mx, 0);
            for (int a = 0; a < m1; ++a)
                sigma[mx + a] = mx + m2 + a;
            for (int a = 0; a < m2; ++a)
                sigma[mx + m1 + a] = mx + a;
            rep.expect(relabel_marks(lo_first, sigma) == hi_first, [&] { return fail_msg("parallel associativity"); });
        }

        auto sy = detail::random_permutation(rng, ay);
        rep.expect(stable_glue(x, i, relabel_inputs(y, sy)) == relabel_inputs(xy, detail::inner_block(ax, i, sy)),
                   [&] { return fail_msg("equivariance in the inner curve"); });
        auto sx = detail::random_permutation(rng, ax);
        rep.expect(stable_glue(relabel_inputs(x, sx), sx[i], y) == relabel_inputs(xy, detail::outer_block(ay, i, sx)),
                   [&] { return fail_msg("equivariance in the outer curve"); });

        for (int jj = 0; jj < ay; ++jj)
            rep.expect(angle(xy, i + jj) == angle(y, jj) * angle(x, i),
                       [&] { return fail_msg("angle multiplicativity at " + std::to_string(jj)); });

        const int slot = detail::uniform(rng, 0, x.num_slots() - 1);
        auto a = random_normal_form(s, rng, MidKind::Any), b = random_normal_form(s, rng, MidKind::Any);
        rep.expect(annulus_act(NormalForm::identity(s), x, slot) == x, [&] { return fail_msg("unit action"); });
        rep.expect(annulus_act(a * b, x, slot) == annulus_act(a, annulus_act(b, x, slot), slot),
                   [&] { return fail_msg("action law"); });
        auto bare = random_bare(s, rng);
        rep.expect(stable_glue(annulus_act(*bare.bare, x, i), i, y) == stable_glue(x, i, stable_glue(bare, 0, y)),
                   [&] { return fail_msg("action through a glued annulus"); });

        if (!x.bare && !y.bare) {
            auto got = reduce(xy);
            rep.expect(got == detail::nodal_union(reduce(x), i, reduce(y)), [&] { return fail_msg("reduced locus"); });
            for (const auto& e : got.edges)
                rep.expect(e.annulus.mid.is_zero(), [&] { return fail_msg("reduced smoothing parameter"); });
        }
    }
    for (int trial = 0; trial < count / 5; ++trial) {
        auto a = random_annulus(s, rng), b = random_annulus(s, rng);
        auto ca = StableTreeCurve::bare_annulus(to_monoid_chart(a));
        auto cb = StableTreeCurve::bare_annulus(to_monoid_chart(b));
        rep.expect(from_monoid_chart(*stable_glue(cb, 0, ca).bare) == glue_annuli(a, b),
                   [&] { return "bare annuli glue unlike annuli for " + detail::show(a) + ", " + detail::show(b); });
    }
    return rep;
}

/// Comm over the trivial monoid is terminal, and the angle tuple is a map
/// of operads on `count` random composites.
inline AxiomReport check_comm_suite(Rng& rng, int count = 200) {
    AxiomReport rep;
    for (int n = 0; n <= 6; ++n)
        rep.expect(comm_operations(std::vector<TrivialMonoid>{{}}, n).size() == 1,
                   [&] { return "Comm over the trivial monoid has several operations of arity " + std::to_string(n); });
    auto s = make_spec(2, 3);
    for (int trial = 0; trial < count; ++trial) {
        auto x = detail::uniform(rng, 0, 5) == 0 ? random_bare(s, rng) : random_curve(s, rng);
        auto y = detail::uniform(rng, 0, 5) == 0 ? random_bare(s, rng) : random_curve(s, rng);
        const int i = detail::pick_slot(rng, x);
        rep.expect(comm_g_map(stable_glue(x, i, y)) == comm_compose(comm_g_map(x), i, comm_g_map(y)),
                   [&] { return "angle tuple is not an operad map at x = " + detail::show(x); });
    }
    return rep;
}

struct Suite {
    std::string name;
    std::string description;
    std::function<AxiomReport(Rng&)> run;
};

/// The named suites behind `ffc --check`, at full size.
inline const std::vector<Suite>& check_suites() {
    static const std::vector<Suite> suites = {
        {"factorization", "normal-ordered factorization round trip and uniqueness",
         [](Rng& rng) { return check_factorization(rng); }},
        {"monoid", "monoid laws of the normal-ordered product", [](Rng& rng) { return check_monoid_laws(rng); }},
        {"transition", "transition law of glued annuli over generic parameters",
         [](Rng& rng) { return check_transition_oracle(rng); }},
        {"corolla", "corolla category laws, operadic axioms and mutation harness",
         [](Rng&) { return check_corolla_suite({3, 4, 2}, {2, 3, 1}); }},
        {"contraction", "order independence of contractions",
         [](Rng& rng) { return check_contraction_orders({3, 4, 2}, {5, 4, 0}, make_spec(2, 3), rng); }},
        {"fld", "operad laws of framed genus-0 curves", [](Rng& rng) { return check_fld_suite(rng); }},
        {"comm", "Comm over monoids and the angle map", [](Rng& rng) { return check_comm_suite(rng); }},
    };
    return suites;
}

} // namespace ffc
