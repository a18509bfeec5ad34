#pragma once

// A small prefix expression language over the library.
//
//   (nprod (nf (neg e1) 0 ()) (nf () t (pos e1)))
//   (glue (pcurve 3) 1 (pcurve 3))
//
// Numbers are integers or p/q. Symbols e1..em are the nilpotent variables
// (eps is e1), u is the Laurent variable, inf the point at infinity; any
// other symbol in argument position is a generic invertible parameter,
// adjoined to the ring in order of first appearance. () is the identity
// twist or the empty list. Slots and permutations are 1-based.

#include <functional>
#include <map>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "ffc/comm.hpp"
#include "ffc/corolla.hpp"
#include "ffc/fld.hpp"

namespace ffc::dsl {

struct Expr {
    enum class Type { Number, Symbol, List };
    Type type = Type::List;
    std::string text; ///< atoms only
    std::vector<Expr> items;
    int line = 1, column = 1;

    bool is_list() const { return type == Type::List; }
    bool is_symbol(const std::string& s) const { return type == Type::Symbol && text == s; }
    std::string head() const {
        return is_list() && !items.empty() && items[0].type == Type::Symbol ? items[0].text : std::string();
    }

    // positions are not part of the tree
    friend bool operator==(const Expr& a, const Expr& b) {
        return a.type == b.type && a.text == b.text && a.items == b.items;
    }
};

[[noreturn]] inline void syntax_error(const std::string& msg, int line, int col) {
    throw ParseError("SyntaxError",
                     "SyntaxError: " + msg + " at line " + std::to_string(line) + ", column " + std::to_string(col),
                     line, col);
}

[[noreturn]] inline void type_error(const std::string& msg, const Expr& at) {
    throw ParseError("TypeError",
                     "TypeError: " + msg + " at line " + std::to_string(at.line) + ", column " +
                         std::to_string(at.column),
                     at.line, at.column);
}

// ---------------------------------------------------------------------------
// Parsing.

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    Expr parse_program() {
        skip();
        if (eof())
            syntax_error("empty program", line_, col_);
        Expr e = parse_expr();
        skip();
        if (!eof())
            syntax_error("unexpected input after the expression", line_, col_);
        return e;
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == ';') {
                while (!eof() && peek() != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    Expr parse_expr() {
        Expr e;
        e.line = line_;
        e.column = col_;
        if (peek() == ')')
            syntax_error("unexpected ')'", line_, col_);
        if (peek() == '(') {
            advance();
            e.type = Expr::Type::List;
            for (;;) {
                skip();
                if (eof())
                    syntax_error("unexpected end of input, expected ')'", line_, col_);
                if (peek() == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(parse_expr());
            }
        }
        std::string tok;
        while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' && peek() != ')' &&
               peek() != ';') {
            tok += peek();
            advance();
        }
        static const std::regex number(R"(-?[0-9]+(/[0-9]+)?)");
        static const std::regex symbol(R"([A-Za-z_][A-Za-z0-9_\-]*|\*)");
        if (std::regex_match(tok, number)) {
            auto slash = tok.find('/');
            if (slash != std::string::npos && tok.find_first_not_of('0', slash + 1) == std::string::npos)
                syntax_error("zero denominator in " + tok, e.line, e.column);
            e.type = Expr::Type::Number;
        } else if (std::regex_match(tok, symbol)) {
            e.type = Expr::Type::Symbol;
        } else {
            syntax_error("invalid token '" + tok + "'", e.line, e.column);
        }
        e.text = tok;
        return e;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

inline Expr parse(const std::string& source) { return Parser(source).parse_program(); }

inline std::string to_source(const Expr& e) {
    if (!e.is_list())
        return e.text;
    std::string out = "(";
    for (std::size_t k = 0; k < e.items.size(); ++k)
        out += (k ? " " : "") + to_source(e.items[k]);
    return out + ")";
}

// ---------------------------------------------------------------------------
// Kinds and values.

enum class Kind { Int, Num, Ring, Poly, Aut, Neg, Pos, Nil, NF, Annulus, Graph, Corollas, Morphism, Curve, Tree, Angles, Ints, Point };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Int: return "int";
    case Kind::Num: return "rational";
    case Kind::Ring: return "ring";
    case Kind::Poly: return "laurent";
    case Kind::Aut: return "aut";
    case Kind::Neg: return "neg";
    case Kind::Pos: return "pos";
    case Kind::Nil: return "nil";
    case Kind::NF: return "normalform";
    case Kind::Annulus: return "annulus";
    case Kind::Graph: return "graph";
    case Kind::Corollas: return "corollas";
    case Kind::Morphism: return "morphism";
    case Kind::Curve: return "curve";
    case Kind::Tree: return "tree";
    case Kind::Angles: return "angles";
    case Kind::Ints: return "ints";
    case Kind::Point: return "point";
    }
    return "?";
}

inline bool accepts(Kind want, Kind got) {
    if (want == got)
        return true;
    const bool number = got == Kind::Int || got == Kind::Num;
    switch (want) {
    case Kind::Num: return got == Kind::Int;
    case Kind::Ring: return number;
    case Kind::Poly: return number || got == Kind::Ring;
    case Kind::Point: return number || got == Kind::Ring;
    case Kind::Neg:
    case Kind::Pos:
    case Kind::Ints:
    case Kind::Angles: return got == Kind::Nil;
    default: return false;
    }
}

struct Nil {};

struct GraphValue {
    ModularGraph graph;
    bool directed = true;
};

struct Angles {
    std::vector<NormalForm> values;
};

using Value = std::variant<Rational, RingElem, LaurentPoly, WittAut, NegAut, PosAut, Nil, NormalForm, FramedAnnulus,
                           GraphValue, Multicorolla, CorollaMorphism, StableTreeCurve, MarkedTree, Angles,
                           std::vector<int>, P1Point>;

struct Context {
    SpecRef spec; ///< the evaluation ring, with the program's parameters
};

inline int as_int(const Value& v) {
    const Rational& q = std::get<Rational>(v);
    if (q.get_den() != 1 || !q.get_num().fits_sint_p())
        fail("InvalidArgument", "expected a machine integer, got " + q.get_str());
    return static_cast<int>(q.get_num().get_si());
}

inline Value coerce(Value v, Kind from, Kind want, const SpecRef& spec) {
    if (from == want || (want == Kind::Num && from == Kind::Int))
        return v;
    auto ring = [&]() -> RingElem {
        if (auto* q = std::get_if<Rational>(&v))
            return RingElem::constant(spec, *q);
        return std::get<RingElem>(v);
    };
    switch (want) {
    case Kind::Ring: return ring();
    case Kind::Poly: return LaurentPoly::constant(ring());
    case Kind::Point: return P1Point::affine(ring());
    case Kind::Neg: return NegAut(spec);
    case Kind::Pos: return PosAut(spec);
    case Kind::Ints: return std::vector<int>{};
    case Kind::Angles: return Angles{};
    default: break;
    }
    fail("InternalError", std::string("cannot coerce ") + kind_name(from) + " to " + kind_name(want));
}

// ---------------------------------------------------------------------------
// Operations.

using Args = std::vector<Value>;
using OpFn = std::function<Value(const Context&, Args&)>;

struct Signature {
    std::string head;
    std::vector<Kind> args;
    std::optional<Kind> rest; ///< repeated trailing argument, zero or more
    Kind result;
    OpFn fn;
};

namespace detail {

template <class T>
T& arg(Args& a, std::size_t i) {
    return std::get<T>(a[i]);
}

template <class T, class F>
Value fold(Args& a, F f) {
    T acc = std::get<T>(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i)
        acc = f(acc, std::get<T>(a[i]));
    return acc;
}

inline std::vector<int> one_based_permutation(const std::vector<int>& p) {
    std::vector<int> out;
    for (int x : p)
        out.push_back(x - 1);
    return out;
}

/// One component with n slots at 0, 1, infinity, 2, 3, ... and untwisted
/// framings.
inline StableTreeCurve point_curve(const SpecRef& s, int n) {
    if (n < 3)
        fail("UnstableCurve", "a single component needs at least three slots");
    StableTreeCurve c;
    c.spec = s;
    c.num_components = 1;
    for (int k = 0; k < n; ++k) {
        P1Point p = k == 2 ? P1Point::infinity(s) : P1Point::affine(RingElem::constant(s, k < 2 ? k : k - 1));
        c.framings.push_back({0, p, NormalForm::scaling(RingElem::zero(s))});
    }
    return canonicalize(c);
}

} // namespace detail

inline const std::vector<Signature>& signatures() {
    using K = Kind;
    using detail::arg;
    static const std::vector<Signature> table = {
        // ring elements
        {"radd", {K::Ring, K::Ring}, K::Ring, K::Ring,
         [](const Context&, Args& a) { return detail::fold<RingElem>(a, [](auto x, auto y) { return x + y; }); }},
        {"rsub", {K::Ring, K::Ring}, {}, K::Ring,
         [](const Context&, Args& a) -> Value { return arg<RingElem>(a, 0) - arg<RingElem>(a, 1); }},
        {"rmul", {K::Ring, K::Ring}, K::Ring, K::Ring,
         [](const Context&, Args& a) { return detail::fold<RingElem>(a, [](auto x, auto y) { return x * y; }); }},
        {"mul", {K::Ring, K::Ring}, {}, K::Ring,
         [](const Context&, Args& a) -> Value { return arg<RingElem>(a, 0) * arg<RingElem>(a, 1); }},
        {"rneg", {K::Ring}, {}, K::Ring, [](const Context&, Args& a) -> Value { return -arg<RingElem>(a, 0); }},
        {"rinv", {K::Ring}, {}, K::Ring, [](const Context&, Args& a) -> Value { return arg<RingElem>(a, 0).inverse(); }},
        {"invert", {K::Ring}, {}, K::Ring,
         [](const Context&, Args& a) -> Value { return arg<RingElem>(a, 0).inverse(); }},
        {"rpow", {K::Ring, K::Int}, {}, K::Ring,
         [](const Context&, Args& a) -> Value {
             int k = as_int(a[1]);
             const RingElem& x = arg<RingElem>(a, 0);
             return k >= 0 ? x.pow(k) : x.inverse().pow(-k);
         }},
        // Laurent polynomials
        {"mono", {K::Ring, K::Int}, {}, K::Poly,
         [](const Context&, Args& a) -> Value { return LaurentPoly::monomial(arg<RingElem>(a, 0), as_int(a[1])); }},
        {"ladd", {K::Poly, K::Poly}, K::Poly, K::Poly,
         [](const Context&, Args& a) { return detail::fold<LaurentPoly>(a, [](auto x, auto y) { return x + y; }); }},
        {"mul", {K::Poly, K::Poly}, {}, K::Poly,
         [](const Context&, Args& a) -> Value { return arg<LaurentPoly>(a, 0) * arg<LaurentPoly>(a, 1); }},
        {"subst", {K::Poly, K::Poly}, {}, K::Poly,
         [](const Context&, Args& a) -> Value { return substitute(arg<LaurentPoly>(a, 0), arg<LaurentPoly>(a, 1)); }},
        {"cinv", {K::Poly}, {}, K::Poly,
         [](const Context&, Args& a) -> Value { return compositional_inverse(arg<LaurentPoly>(a, 0)); }},
        // automorphisms of G_m
        {"aut", {K::Poly}, {}, K::Aut,
         [](const Context&, Args& a) -> Value { return WittAut::from_laurent(arg<LaurentPoly>(a, 0)); }},
        {"compose", {K::Aut, K::Aut}, {}, K::Aut,
         [](const Context&, Args& a) -> Value { return compose_aut(arg<WittAut>(a, 0), arg<WittAut>(a, 1)); }},
        {"invert", {K::Aut}, {}, K::Aut, [](const Context&, Args& a) -> Value { return invert_aut(arg<WittAut>(a, 0)); }},
        {"factor", {K::Aut}, {}, K::NF,
         [](const Context&, Args& a) -> Value { return birkhoff_factor(arg<WittAut>(a, 0)); }},
        {"asaut", {K::NF}, {}, K::Aut,
         [](const Context&, Args& a) -> Value { return as_automorphism(arg<NormalForm>(a, 0)); }},
        // the annuli monoid
        {"neg", {}, K::Ring, K::Neg,
         [](const Context& c, Args& a) -> Value {
             std::vector<RingElem> cs;
             for (auto& v : a)
                 cs.push_back(std::get<RingElem>(v));
             return NegAut::from_coeffs(c.spec, cs);
         }},
        {"pos", {}, K::Ring, K::Pos,
         [](const Context& c, Args& a) -> Value {
             std::vector<RingElem> cs;
             for (auto& v : a)
                 cs.push_back(std::get<RingElem>(v));
             return PosAut::from_coeffs(c.spec, cs);
         }},
        {"nf", {K::Neg, K::Ring, K::Pos}, {}, K::NF,
         [](const Context&, Args& a) -> Value {
             return NormalForm{arg<NegAut>(a, 0), arg<RingElem>(a, 1), arg<PosAut>(a, 2)};
         }},
        {"nprod", {K::NF, K::NF}, K::NF, K::NF,
         [](const Context&, Args& a) { return detail::fold<NormalForm>(a, [](auto x, auto y) { return x * y; }); }},
        {"mul", {K::NF, K::NF}, {}, K::NF,
         [](const Context&, Args& a) -> Value { return arg<NormalForm>(a, 0) * arg<NormalForm>(a, 1); }},
        {"reverse", {K::NF}, {}, K::NF, [](const Context&, Args& a) -> Value { return reverse(arg<NormalForm>(a, 0)); }},
        // annuli
        {"ann", {K::Neg, K::Ring, K::Neg}, {}, K::Annulus,
         [](const Context&, Args& a) -> Value {
             const RingElem& t = arg<RingElem>(a, 1);
             if (t.is_nilpotent())
                 return FramedAnnulus::make(arg<NegAut>(a, 0), t, arg<NegAut>(a, 2));
             return FramedAnnulus::generic(arg<NegAut>(a, 0), t, arg<NegAut>(a, 2));
         }},
        {"glue", {K::Annulus, K::Annulus}, {}, K::Annulus,
         [](const Context&, Args& a) -> Value { return glue_annuli(arg<FramedAnnulus>(a, 0), arg<FramedAnnulus>(a, 1)); }},
        {"chart", {K::Annulus}, {}, K::NF,
         [](const Context&, Args& a) -> Value { return to_monoid_chart(arg<FramedAnnulus>(a, 0)); }},
        {"unchart", {K::NF}, {}, K::Annulus,
         [](const Context&, Args& a) -> Value { return from_monoid_chart(arg<NormalForm>(a, 0)); }},
        {"transition", {K::Annulus}, {}, K::Poly,
         [](const Context&, Args& a) -> Value {
             const auto& x = arg<FramedAnnulus>(a, 0);
             return x.t.is_unit() ? transition(x) : transition_generic(x);
         }},
        // graphs and corollas
        {"collapse", {K::Graph}, {}, K::Corollas,
         [](const Context&, Args& a) -> Value {
             const auto& g = arg<GraphValue>(a, 0);
             return collapse(g.graph, g.directed).corollas;
         }},
        {"split", {K::Graph, K::Ints}, {}, K::Graph,
         [](const Context&, Args& a) -> Value {
             const auto& g = arg<GraphValue>(a, 0);
             return GraphValue{split(g.graph, arg<std::vector<int>>(a, 1)), g.directed};
         }},
        {"morphism", {K::Graph}, {}, K::Morphism,
         [](const Context&, Args& a) -> Value {
             const auto& g = arg<GraphValue>(a, 0);
             return morphism_from_graph(g.graph, g.directed);
         }},
        {"compose", {K::Morphism, K::Morphism}, {}, K::Morphism,
         [](const Context&, Args& a) -> Value {
             return compose_morphisms(arg<CorollaMorphism>(a, 0), arg<CorollaMorphism>(a, 1));
         }},
        {"project", {K::Morphism}, {}, K::Ints,
         [](const Context&, Args& a) -> Value { return project_to_fin(arg<CorollaMorphism>(a, 0)); }},
        {"target", {K::Morphism}, {}, K::Corollas,
         [](const Context&, Args& a) -> Value { return arg<CorollaMorphism>(a, 0).target; }},
        {"list", {}, K::Int, K::Ints,
         [](const Context&, Args& a) -> Value {
             std::vector<int> out;
             for (auto& v : a)
                 out.push_back(as_int(v));
             return out;
         }},
        // curves
        {"pcurve", {K::Int}, {}, K::Curve,
         [](const Context& c, Args& a) -> Value { return detail::point_curve(c.spec, as_int(a[0])); }},
        {"bare", {K::NF}, {}, K::Curve,
         [](const Context&, Args& a) -> Value { return StableTreeCurve::bare_annulus(arg<NormalForm>(a, 0)); }},
        {"glue", {K::Curve, K::Int, K::Curve}, {}, K::Curve,
         [](const Context&, Args& a) -> Value {
             return stable_glue(arg<StableTreeCurve>(a, 0), as_int(a[1]) - 1, arg<StableTreeCurve>(a, 2));
         }},
        {"act", {K::NF, K::Curve, K::Int}, {}, K::Curve,
         [](const Context&, Args& a) -> Value {
             return annulus_act(arg<NormalForm>(a, 0), arg<StableTreeCurve>(a, 1), as_int(a[2]) - 1);
         }},
        {"angle", {K::Curve, K::Int}, {}, K::NF,
         [](const Context&, Args& a) -> Value { return angle(arg<StableTreeCurve>(a, 0), as_int(a[1]) - 1); }},
        {"angles", {K::Curve}, {}, K::Angles,
         [](const Context&, Args& a) -> Value { return Angles{comm_g_map(arg<StableTreeCurve>(a, 0))}; }},
        {"relabel", {K::Curve, K::Ints}, {}, K::Curve,
         [](const Context&, Args& a) -> Value {
             return relabel_inputs(arg<StableTreeCurve>(a, 0),
                                   detail::one_based_permutation(arg<std::vector<int>>(a, 1)));
         }},
        {"reduce", {K::Curve}, {}, K::Curve,
         [](const Context&, Args& a) -> Value { return reduce(arg<StableTreeCurve>(a, 0)); }},
        {"hour", {K::Curve}, {}, K::Tree,
         [](const Context&, Args& a) -> Value { return hour_reduced(arg<StableTreeCurve>(a, 0)); }},
        // Comm over the annuli monoid
        {"tuple", {}, K::NF, K::Angles,
         [](const Context&, Args& a) -> Value {
             Angles out;
             for (auto& v : a)
                 out.values.push_back(std::get<NormalForm>(v));
             return out;
         }},
        {"ccompose", {K::Angles, K::Int, K::Angles}, {}, K::Angles,
         [](const Context&, Args& a) -> Value {
             return Angles{comm_compose(arg<Angles>(a, 0).values, as_int(a[1]) - 1, arg<Angles>(a, 2).values)};
         }},
    };
    return table;
}

// ---------------------------------------------------------------------------
// Type checking and evaluation.

/// Single-pass checker. Records the generic parameters in order of first
/// appearance; `num_vars` bounds the e-variables.
class Checker {
public:
    explicit Checker(int num_vars) : num_vars_(num_vars) {}

    const std::vector<std::string>& params() const { return params_; }

    Kind check(const Expr& e) {
        switch (e.type) {
        case Expr::Type::Number: return e.text.find('/') == std::string::npos ? Kind::Int : Kind::Num;
        case Expr::Type::Symbol: return check_symbol(e);
        case Expr::Type::List: break;
        }
        if (e.items.empty())
            return Kind::Nil;
        const std::string h = e.head();
        if (h.empty())
            type_error("expected an operation name", e.items[0]);
        if (h == "graph" || h == "dgraph")
            return check_graph(e);
        if (h == "curve")
            return check_curve(e);
        std::vector<Kind> got;
        for (std::size_t k = 1; k < e.items.size(); ++k)
            got.push_back(check(e.items[k]));
        return resolve(e, got).result;
    }

    /// The first signature of the head accepting the argument kinds.
    static const Signature& resolve(const Expr& e, const std::vector<Kind>& got) {
        const std::string h = e.head();
        std::vector<const Signature*> candidates;
        for (const auto& s : signatures()) {
            if (s.head != h)
                continue;
            candidates.push_back(&s);
            if (got.size() < s.args.size() || (!s.rest && got.size() != s.args.size()))
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < got.size() && ok; ++k)
                ok = accepts(k < s.args.size() ? s.args[k] : *s.rest, got[k]);
            if (ok)
                return s;
        }
        if (candidates.empty())
            type_error("unknown operation '" + h + "'", e.items[0]);
        std::string expected;
        for (const auto* s : candidates) {
            expected += expected.empty() ? "" : " or ";
            expected += "(" + h;
            for (Kind k : s->args)
                expected += std::string(" ") + kind_name(k);
            if (s->rest)
                expected += std::string(" ") + kind_name(*s->rest) + "...";
            expected += ")";
        }
        std::string actual = "(" + h;
        for (Kind k : got)
            actual += std::string(" ") + kind_name(k);
        actual += ")";
        type_error("expected " + expected + ", got " + actual, e);
    }

private:
    Kind check_symbol(const Expr& e) {
        static const std::regex var(R"(e([0-9]+))");
        std::smatch m;
        if (e.text == "u")
            return Kind::Poly;
        if (e.text == "inf")
            return Kind::Point;
        if (e.text == "*")
            type_error("'*' only appears as an edge end", e);
        if (e.text == "eps" || std::regex_match(e.text, m, var)) {
            int i = e.text == "eps" ? 1 : std::stoi(m[1].str());
            if (i < 1 || i > num_vars_)
                type_error(e.text + " is not a variable of a ring with " + std::to_string(num_vars_) +
                               " nilpotent variables",
                           e);
            return Kind::Ring;
        }
        if (std::find(params_.begin(), params_.end(), e.text) == params_.end())
            params_.push_back(e.text);
        return Kind::Ring;
    }

    void expect(const Expr& e, Kind want) {
        Kind got = check(e);
        if (!accepts(want, got))
            type_error(std::string("expected ") + kind_name(want) + ", got " + kind_name(got), e);
    }

    static void need_items(const Expr& e, std::size_t n) {
        if (e.items.size() != n)
            type_error("'" + e.head() + "' takes " + std::to_string(n - 1) + " arguments", e);
    }

    // (graph (genus g...) (edge a b)... (circles n)); an edge end is an
    // integer vertex or *
    Kind check_graph(const Expr& e) {
        int genus_items = 0;
        for (std::size_t k = 1; k < e.items.size(); ++k) {
            const Expr& it = e.items[k];
            const std::string h = it.head();
            if (h == "genus") {
                ++genus_items;
                for (std::size_t j = 1; j < it.items.size(); ++j)
                    expect(it.items[j], Kind::Int);
            } else if (h == "edge") {
                need_items(it, 3);
                for (std::size_t j = 1; j < 3; ++j)
                    if (!it.items[j].is_symbol("*"))
                        expect(it.items[j], Kind::Int);
            } else if (h == "circles") {
                need_items(it, 2);
                expect(it.items[1], Kind::Int);
            } else {
                type_error("expected (genus ...), (edge a b) or (circles n) in a graph", it);
            }
        }
        if (genus_items != 1)
            type_error("a graph has exactly one (genus ...) clause", e);
        return Kind::Graph;
    }

    // (curve (components n) (node child parent child-point parent-point nf)...
    //        (slot vertex point nf)... (mark vertex point)...)
    Kind check_curve(const Expr& e) {
        int components = 0;
        for (std::size_t k = 1; k < e.items.size(); ++k) {
            const Expr& it = e.items[k];
            const std::string h = it.head();
            if (h == "components") {
                ++components;
                need_items(it, 2);
                expect(it.items[1], Kind::Int);
            } else if (h == "node") {
                need_items(it, 6);
                expect(it.items[1], Kind::Int);
                expect(it.items[2], Kind::Int);
                expect(it.items[3], Kind::Point);
                expect(it.items[4], Kind::Point);
                expect(it.items[5], Kind::NF);
            } else if (h == "slot") {
                need_items(it, 4);
                expect(it.items[1], Kind::Int);
                expect(it.items[2], Kind::Point);
                expect(it.items[3], Kind::NF);
            } else if (h == "mark") {
                need_items(it, 3);
                expect(it.items[1], Kind::Int);
                expect(it.items[2], Kind::Point);
            } else {
                type_error("expected (components n), (node ...), (slot ...) or (mark ...) in a curve", it);
            }
        }
        if (components != 1)
            type_error("a curve has exactly one (components n) clause", e);
        return Kind::Curve;
    }

    int num_vars_;
    std::vector<std::string> params_;
};

/// Evaluate a checked expression; returns the value and its kind.
class Evaluator {
public:
    explicit Evaluator(Context ctx) : ctx_(std::move(ctx)) {}

    std::pair<Value, Kind> eval(const Expr& e) {
        const SpecRef& s = ctx_.spec;
        switch (e.type) {
        case Expr::Type::Number: {
            Rational q(e.text);
            q.canonicalize();
            return {q, e.text.find('/') == std::string::npos ? Kind::Int : Kind::Num};
        }
        case Expr::Type::Symbol: {
            if (e.text == "u")
                return {LaurentPoly::u(s), Kind::Poly};
            if (e.text == "inf")
                return {P1Point::infinity(s), Kind::Point};
            if (e.text == "eps")
                return {RingElem::var(s, 1), Kind::Ring};
            if (e.text.size() > 1 && e.text[0] == 'e' && std::all_of(e.text.begin() + 1, e.text.end(), ::isdigit))
                return {RingElem::var(s, std::stoi(e.text.substr(1))), Kind::Ring};
            auto it = std::find(s->params.begin(), s->params.end(), e.text);
            return {RingElem::param(s, static_cast<int>(it - s->params.begin())), Kind::Ring};
        }
        case Expr::Type::List: break;
        }
        if (e.items.empty())
            return {Nil{}, Kind::Nil};
        const std::string h = e.head();
        if (h == "graph" || h == "dgraph")
            return {eval_graph(e, h == "dgraph"), Kind::Graph};
        if (h == "curve")
            return {eval_curve(e), Kind::Curve};
        Args args;
        std::vector<Kind> kinds;
        for (std::size_t k = 1; k < e.items.size(); ++k) {
            auto [v, kind] = eval(e.items[k]);
            args.push_back(std::move(v));
            kinds.push_back(kind);
        }
        const Signature& sig = Checker::resolve(e, kinds);
        for (std::size_t k = 0; k < args.size(); ++k)
            args[k] = coerce(std::move(args[k]), kinds[k], k < sig.args.size() ? sig.args[k] : *sig.rest, s);
        return {sig.fn(ctx_, args), sig.result};
    }

private:
    Value as(const Expr& e, Kind want) {
        auto [v, kind] = eval(e);
        return coerce(std::move(v), kind, want, ctx_.spec);
    }
    int as_int_expr(const Expr& e) { return as_int(as(e, Kind::Int)); }

    GraphValue eval_graph(const Expr& e, bool directed) {
        ModularGraph g;
        for (std::size_t k = 1; k < e.items.size(); ++k) {
            const Expr& it = e.items[k];
            const std::string h = it.head();
            if (h == "genus") {
                for (std::size_t j = 1; j < it.items.size(); ++j)
                    g.genus.push_back(as_int_expr(it.items[j]));
            } else if (h == "edge") {
                auto end = [&](const Expr& x) { return x.is_symbol("*") ? kBase : as_int_expr(x); };
                g.graph.edges.emplace_back(end(it.items[1]), end(it.items[2]));
            } else {
                g.graph.circles = as_int_expr(it.items[1]);
            }
        }
        g.graph.num_vertices = static_cast<int>(g.genus.size());
        validate(g);
        return {g, directed};
    }

    StableTreeCurve eval_curve(const Expr& e) {
        StableTreeCurve c;
        c.spec = ctx_.spec;
        auto point = [&](const Expr& x) { return std::get<P1Point>(as(x, Kind::Point)); };
        auto nf = [&](const Expr& x) { return std::get<NormalForm>(as(x, Kind::NF)); };
        for (std::size_t k = 1; k < e.items.size(); ++k) {
            const Expr& it = e.items[k];
            const std::string h = it.head();
            if (h == "components")
                c.num_components = as_int_expr(it.items[1]);
            else if (h == "node")
                c.edges.push_back({as_int_expr(it.items[1]), as_int_expr(it.items[2]), point(it.items[3]),
                                   point(it.items[4]), nf(it.items[5])});
            else if (h == "slot")
                c.framings.push_back({as_int_expr(it.items[1]), point(it.items[2]), nf(it.items[3])});
            else
                c.marks.push_back({as_int_expr(it.items[1]), point(it.items[2])});
        }
        return canonicalize(c);
    }

    Context ctx_;
};

} // namespace ffc::dsl
