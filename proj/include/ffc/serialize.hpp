#pragma once

// JSON encodings. Rationals are strings "p/q"; a ring element is a list of
// [coefficient, exponent vector] pairs in monomial order; a Laurent
// polynomial is a list of [power, ring element] pairs.

#include <json.hpp>

#include "ffc/corolla.hpp"
#include "ffc/fld.hpp"

namespace ffc {

using Json = nlohmann::ordered_json;

inline Json spec_to_json(const SpecRef& s) {
    return Json{{"vars", s->num_vars}, {"order", s->trunc_order}, {"params", s->params}};
}

inline SpecRef spec_from_json(const Json& j) {
    return make_spec(j.at("vars").get<int>(), j.at("order").get<int>(),
                     j.value("params", std::vector<std::string>{}));
}

inline Json to_json(const RingElem& x) {
    Json out = Json::array();
    for (const auto& [m, c] : x.terms())
        out.push_back(Json::array({c.get_str(), m}));
    return out;
}

inline RingElem ring_from_json(const SpecRef& s, const Json& j) {
    RingElem::Terms terms;
    for (const auto& t : j) {
        Rational c(t.at(0).get<std::string>());
        c.canonicalize();
        terms[t.at(1).get<Monomial>()] += c;
    }
    return RingElem::from_terms(s, terms);
}

inline Json to_json(const LaurentPoly& f) {
    Json out = Json::array();
    for (const auto& [k, c] : f.terms())
        out.push_back(Json::array({k, to_json(c)}));
    return out;
}

inline Json coeffs_to_json(const std::vector<RingElem>& cs) {
    Json out = Json::array();
    for (const auto& c : cs)
        out.push_back(to_json(c));
    return out;
}

inline std::vector<RingElem> coeffs_from_json(const SpecRef& s, const Json& j) {
    std::vector<RingElem> out;
    for (const auto& c : j)
        out.push_back(ring_from_json(s, c));
    return out;
}

template <int Sign>
Json to_json(const detail::UnipotentAut<Sign>& d) {
    return coeffs_to_json(d.coeffs());
}

inline Json to_json(const WittAut& f) { return Json{{"map", to_json(f.map())}}; }

inline Json to_json(const NormalForm& a) {
    return Json{{"neg", to_json(a.neg)}, {"mid", to_json(a.mid)}, {"pos", to_json(a.pos)}};
}

inline NormalForm normal_form_from_json(const SpecRef& s, const Json& j) {
    return {NegAut::from_coeffs(s, coeffs_from_json(s, j.at("neg"))), ring_from_json(s, j.at("mid")),
            PosAut::from_coeffs(s, coeffs_from_json(s, j.at("pos")))};
}

inline Json to_json(const FramedAnnulus& a) {
    return Json{{"in", to_json(a.alpha_in)}, {"t", to_json(a.t)}, {"out", to_json(a.alpha_out)}};
}

// Graphs and corollas.

inline Json end_to_json(int v) { return v == kBase ? Json("*") : Json(v); }

inline Json to_json(const ModularGraph& g, bool directed) {
    Json edges = Json::array();
    for (auto [a, b] : g.graph.edges)
        edges.push_back(Json{{"src", end_to_json(a)}, {"dst", end_to_json(b)}});
    return Json{{"directed", directed},
                {"vertices", g.graph.num_vertices},
                {"genus", g.genus},
                {"edges", edges},
                {"circles", g.graph.circles}};
}

inline Json to_json(const Corolla& c) {
    std::string legs;
    for (Leg l : c.legs)
        legs += leg_char(l);
    return Json{{"genus", c.genus}, {"legs", legs}};
}

inline Json to_json(const Multicorolla& m) {
    Json out = Json::array();
    for (const auto& c : m)
        out.push_back(to_json(c));
    return out;
}

inline Json to_json(const CorollaMorphism& m) {
    Json flags = Json::array();
    for (const auto& per : m.flags) {
        Json row = Json::array();
        for (const auto& f : per)
            row.push_back(Json{{"to", f.internal ? "flag" : "leg"}, {"corolla", f.flag.corolla}, {"leg", f.flag.leg}});
        flags.push_back(row);
    }
    return Json{{"directed", m.directed},
                {"source", to_json(m.source)},
                {"target", to_json(m.target)},
                {"vertex_map", m.vertex_map},
                {"flags", flags}};
}

// Curves.

inline Json to_json(const P1Point& p) {
    return p.is_finite() ? Json{{"x", to_json(p.a)}} : Json{{"inf", to_json(p.b)}};
}

inline P1Point point_from_json(const SpecRef& s, const Json& j) {
    if (j.contains("x"))
        return P1Point::affine(ring_from_json(s, j.at("x")));
    return P1Point::make(RingElem::one(s), ring_from_json(s, j.at("inf")));
}

inline Json to_json(const StableTreeCurve& c) {
    if (c.bare)
        return Json{{"bare", to_json(*c.bare)}};
    std::vector<int> comps(c.num_components);
    std::iota(comps.begin(), comps.end(), 0);
    Json edges = Json::array(), framings = Json::array(), marks = Json::array();
    for (const auto& e : c.edges)
        edges.push_back(Json{{"ends", {e.child, e.parent}},
                             {"points", {to_json(e.child_point), to_json(e.parent_point)}},
                             {"q", to_json(e.annulus)}});
    for (const auto& f : c.framings)
        framings.push_back(Json{{"vertex", f.host}, {"point", to_json(f.point)}, {"reparam", to_json(f.data)}});
    for (const auto& m : c.marks)
        marks.push_back(Json{{"vertex", m.host}, {"point", to_json(m.point)}});
    return Json{{"components", comps}, {"edges", edges}, {"framings", framings}, {"marks", marks}};
}

inline StableTreeCurve curve_from_json(const SpecRef& s, const Json& j) {
    if (j.contains("bare"))
        return StableTreeCurve::bare_annulus(normal_form_from_json(s, j.at("bare")));
    StableTreeCurve c;
    c.spec = s;
    c.num_components = static_cast<int>(j.at("components").size());
    for (const auto& e : j.at("edges"))
        c.edges.push_back({e.at("ends").at(0).get<int>(), e.at("ends").at(1).get<int>(),
                           point_from_json(s, e.at("points").at(0)), point_from_json(s, e.at("points").at(1)),
                           normal_form_from_json(s, e.at("q"))});
    for (const auto& f : j.at("framings"))
        c.framings.push_back(
            {f.at("vertex").get<int>(), point_from_json(s, f.at("point")), normal_form_from_json(s, f.at("reparam"))});
    for (const auto& m : j.at("marks"))
        c.marks.push_back({m.at("vertex").get<int>(), point_from_json(s, m.at("point"))});
    validate(c);
    return c;
}

inline Json to_json(const MarkedTree& t) {
    std::vector<int> comps(t.num_components);
    std::iota(comps.begin(), comps.end(), 0);
    Json edges = Json::array(), marks = Json::array();
    for (std::size_t e = 0; e < t.edges.size(); ++e)
        edges.push_back(Json{{"ends", t.edges[e]},
                             {"points", {to_json(t.edge_points[e][0]), to_json(t.edge_points[e][1])}}});
    for (const auto& m : t.marks)
        marks.push_back(Json{{"vertex", m.host}, {"point", to_json(m.point)}});
    return Json{{"components", comps}, {"edges", edges}, {"marks", marks}};
}

} // namespace ffc
