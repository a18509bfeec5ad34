#pragma once

// Seeded generators of random ring elements, automorphisms, normal forms
// and annuli. Used by the property suites and the CLI `--check` runner.

#include <algorithm>
#include <random>
#include <vector>

#include "ffc/fld.hpp"

namespace ffc {

using Rng = std::mt19937_64;

/// All e-monomials of degree 1..N (no generic parameters).
inline std::vector<Monomial> nilpotent_monomials(const SpecRef& spec) {
    std::vector<Monomial> out;
    Monomial m(spec->width(), 0);
    auto rec = [&](auto&& self, int var, int budget) -> void {
        if (var == spec->num_vars) {
            int deg = spec->trunc_order - budget;
            if (deg >= 1)
                out.push_back(m);
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            m[var] = e;
            self(self, var + 1, budget - e);
        }
        m[var] = 0;
    };
    rec(rec, 0, spec->trunc_order);
    return out;
}

inline Rational random_rational(Rng& rng, int bound = 3) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    int n = 0;
    while (n == 0)
        n = num(rng);
    Rational q(n, den(rng));
    q.canonicalize();
    return q;
}

/// Sparse nilpotent element; each monomial present with probability `density`.
inline RingElem random_nilpotent(const SpecRef& spec, Rng& rng, double density = 0.5) {
    std::bernoulli_distribution keep(density);
    RingElem::Terms terms;
    for (const auto& m : nilpotent_monomials(spec))
        if (keep(rng))
            terms.emplace(m, random_rational(rng));
    return RingElem::from_terms(spec, terms);
}

inline RingElem random_unit(const SpecRef& spec, Rng& rng, double density = 0.5) {
    return RingElem::constant(spec, random_rational(rng)) + random_nilpotent(spec, rng, density);
}

enum class MidKind { Unit, Nilpotent, Zero, Any };

inline RingElem random_mid(const SpecRef& spec, Rng& rng, MidKind kind) {
    switch (kind) {
    case MidKind::Unit:
        return random_unit(spec, rng);
    case MidKind::Nilpotent:
        return random_nilpotent(spec, rng);
    case MidKind::Zero:
        return RingElem::zero(spec);
    case MidKind::Any:
        break;
    }
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
    case 0:
        return RingElem::zero(spec);
    case 1:
        return random_nilpotent(spec, rng);
    default:
        return random_unit(spec, rng);
    }
}

inline std::vector<RingElem> random_nilpotent_coeffs(const SpecRef& spec, Rng& rng, int max_len = 3) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::vector<RingElem> out(len(rng));
    for (auto& c : out)
        c = random_nilpotent(spec, rng, 0.4);
    return out;
}

inline NegAut random_neg(const SpecRef& spec, Rng& rng, int max_len = 3) {
    return NegAut::from_coeffs(spec, random_nilpotent_coeffs(spec, rng, max_len));
}

inline PosAut random_pos(const SpecRef& spec, Rng& rng, int max_len = 3) {
    return PosAut::from_coeffs(spec, random_nilpotent_coeffs(spec, rng, max_len));
}

/// A random element of A_m: unit scaling times a nilpotent Laurent correction.
inline WittAut random_witt(const SpecRef& spec, Rng& rng, int span = 3) {
    std::uniform_int_distribution<int> exp(-span, span);
    std::uniform_int_distribution<int> count(0, 4);
    LaurentPoly n(spec);
    for (int i = count(rng); i > 0; --i) {
        int k = 0;
        while (k == 0)
            k = exp(rng);
        n += LaurentPoly::monomial(random_nilpotent(spec, rng, 0.4), k);
    }
    return WittAut::from_parts(random_unit(spec, rng), n);
}

inline NormalForm random_normal_form(const SpecRef& spec, Rng& rng, MidKind kind) {
    return {random_neg(spec, rng), random_mid(spec, rng, kind), random_pos(spec, rng)};
}

inline FramedAnnulus random_annulus(const SpecRef& spec, Rng& rng) {
    return FramedAnnulus::make(random_neg(spec, rng), random_nilpotent(spec, rng), random_neg(spec, rng));
}

/// k points of P^1 pairwise distinct modulo m: distinct rational points
/// (infinity included) moved by nilpotent perturbations.
inline std::vector<P1Point> random_points(const SpecRef& spec, Rng& rng, int k) {
    std::vector<Rational> pool;
    for (int n = -3; n <= 3; ++n)
        for (int d = 1; d <= 2; ++d) {
            Rational q(n, d);
            q.canonicalize();
            if (std::find(pool.begin(), pool.end(), q) == pool.end())
                pool.push_back(q);
        }
    std::shuffle(pool.begin(), pool.end(), rng);
    std::bernoulli_distribution use_inf(0.4);
    std::vector<P1Point> out;
    if (k > 0 && use_inf(rng))
        out.push_back({RingElem::one(spec), random_nilpotent(spec, rng, 0.3)});
    for (std::size_t j = 0; static_cast<int>(out.size()) < k; ++j) {
        if (j >= pool.size())
            fail("InvalidArgument", "too many points requested");
        out.push_back(P1Point::affine(RingElem::constant(spec, pool[j]) + random_nilpotent(spec, rng, 0.3)));
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

struct CurveShape {
    int max_components = 3;
    int min_arity = 1;
    int max_arity = 4;
    int max_marks = 1;
};

/// A random canonical curve. Framing and node data have nilpotent (often
/// zero) mids.
inline StableTreeCurve random_curve(const SpecRef& spec, Rng& rng, const CurveShape& shape = {}) {
    std::uniform_int_distribution<int> nv(1, shape.max_components);
    std::bernoulli_distribution coin(0.5);
    const int V = nv(rng);
    std::vector<int> parent(V, -1), deg(V, 0);
    for (int v = 1; v < V; ++v) {
        parent[v] = std::uniform_int_distribution<int>(0, v - 1)(rng);
        ++deg[v];
        ++deg[parent[v]];
    }
    // hosts of incoming slots and marks
    std::vector<int> inputs, marks;
    std::vector<int> count(V);
    for (int v = 0; v < V; ++v)
        count[v] = deg[v] + (v == 0);
    auto add_point = [&](int v) {
        bool mark = static_cast<int>(marks.size()) < shape.max_marks && std::bernoulli_distribution(0.25)(rng);
        if (!mark && static_cast<int>(inputs.size()) >= shape.max_arity)
            mark = true;
        (mark ? marks : inputs).push_back(v);
        ++count[v];
    };
    for (int v = 0; v < V; ++v)
        while (count[v] < 3)
            add_point(v);
    while (static_cast<int>(inputs.size()) < shape.min_arity) {
        inputs.push_back(std::uniform_int_distribution<int>(0, V - 1)(rng));
        ++count[inputs.back()];
    }
    if (static_cast<int>(inputs.size()) < shape.max_arity && coin(rng)) {
        inputs.push_back(std::uniform_int_distribution<int>(0, V - 1)(rng));
        ++count[inputs.back()];
    }
    std::shuffle(inputs.begin(), inputs.end(), rng);

    std::vector<std::vector<P1Point>> pts(V);
    std::vector<int> used(V, 0);
    for (int v = 0; v < V; ++v)
        pts[v] = random_points(spec, rng, count[v]);
    auto take = [&](int v) { return pts[v][used[v]++]; };
    auto framing_data = [&] {
        std::uniform_int_distribution<int> pick(0, 2);
        return random_normal_form(spec, rng, pick(rng) == 0 ? MidKind::Nilpotent : MidKind::Zero);
    };

    StableTreeCurve c;
    c.spec = spec;
    c.num_components = V;
    for (int v = 1; v < V; ++v) {
        P1Point cp = take(v);
        P1Point pp = take(parent[v]);
        c.edges.push_back(Node{v, parent[v], cp, pp, random_normal_form(spec, rng, coin(rng) ? MidKind::Nilpotent : MidKind::Zero)});
    }
    for (int v : inputs)
        c.framings.push_back(Framing{v, take(v), framing_data()});
    c.framings.push_back(Framing{0, take(0), framing_data()});
    for (int v : marks)
        c.marks.push_back(Mark{v, take(v)});
    return canonicalize(c);
}

inline StableTreeCurve random_bare(const SpecRef& spec, Rng& rng) {
    return StableTreeCurve::bare_annulus(random_normal_form(spec, rng, MidKind::Nilpotent));
}

/// A random Mobius transformation over R.
inline Mobius random_mobius(const SpecRef& spec, Rng& rng) {
    while (true) {
        auto r = [&] { return RingElem::constant(spec, random_rational(rng)) + random_nilpotent(spec, rng, 0.3); };
        RingElem a = r(), b = r(), c = r(), d = r();
        if ((a * d - b * c).is_unit())
            return Mobius::make(a, b, c, d);
    }
}

} // namespace ffc
