#pragma once

// Framed formal nodal annuli in universal coordinates
//
//     X_t = Spf k[[x,y]]/(xy - t),   framings (u, t/u) and (t/u, u),
//
// each framing twisted by a reparametrization u + e(1/u) with nilpotent e.
// Gluing is transported from the monoid law on normal forms through the
// chart
//
//     (alpha_in, t, alpha_out)  <->  (alpha_in^-1, t, J alpha_out J),
//
// J(u) = 1/u. This chart is the one for which the transition function
// u -> alpha_out^-1(t / alpha_in(u)) turns gluing into composition
// T(A.B) = T(B) o J o T(A).

#include <string>
#include <utility>

#include "ffc/witt.hpp"

namespace ffc {

struct FramedAnnulus {
    NegAut alpha_in;
    RingElem t;
    NegAut alpha_out;

    /// A genuine (formal) annulus: the smoothing parameter is nilpotent.
    static FramedAnnulus make(NegAut alpha_in, RingElem t, NegAut alpha_out) {
        if (!t.is_nilpotent())
            fail("InvalidArgument", "smoothing parameter " + t.to_string() + " is not nilpotent");
        return checked(std::move(alpha_in), std::move(t), std::move(alpha_out));
    }

    /// Annulus over a ring with generic parameters whose smoothing parameter
    /// is invertible (a smooth fiber); used by the transition oracle.
    static FramedAnnulus generic(NegAut alpha_in, RingElem t, NegAut alpha_out) {
        if (!t.is_unit())
            fail("NotAUnit", "generic smoothing parameter must be invertible");
        return checked(std::move(alpha_in), std::move(t), std::move(alpha_out));
    }

    static FramedAnnulus untwisted(const RingElem& t) {
        return make(NegAut(t.spec()), t, NegAut(t.spec()));
    }

    const SpecRef& spec() const { return t.spec(); }

    friend bool operator==(const FramedAnnulus&, const FramedAnnulus&) = default;

private:
    static FramedAnnulus checked(NegAut a, RingElem t, NegAut b) {
        require_same_spec(a.spec(), t.spec());
        require_same_spec(b.spec(), t.spec());
        return {std::move(a), std::move(t), std::move(b)};
    }
};

inline std::ostream& operator<<(std::ostream& os, const FramedAnnulus& a) {
    return os << "[" << a.alpha_in << " | " << a.t << " | " << a.alpha_out << "]";
}

inline NormalForm to_monoid_chart(const FramedAnnulus& a) {
    return {a.alpha_in.inverse(), a.t, antipodal(a.alpha_out)};
}

inline FramedAnnulus from_monoid_chart(const NormalForm& m) {
    return {m.neg.inverse(), m.mid, antipodal(m.pos)};
}

inline FramedAnnulus glue_annuli(const FramedAnnulus& a, const FramedAnnulus& b) {
    require_same_spec(a.spec(), b.spec());
    return from_monoid_chart(normal_product(to_monoid_chart(a), to_monoid_chart(b)));
}

/// Swap the two boundary components. In the monoid chart this is the
/// anti-automorphism M -> J M^-1 J, extended polynomially in the mid.
inline NormalForm reverse(const NormalForm& m) {
    return {antipodal(m.pos.inverse()), m.mid, antipodal(m.neg.inverse())};
}

inline FramedAnnulus reverse(const FramedAnnulus& a) { return {a.alpha_out, a.t, a.alpha_in}; }

/// u -> alpha_out^-1(t / alpha_in(u)) for an annulus with invertible t.
inline LaurentPoly transition(const FramedAnnulus& a) {
    if (!a.t.is_unit())
        fail("NotAUnit", "transition function needs an invertible smoothing parameter");
    const SpecRef& spec = a.spec();
    LaurentPoly j = LaurentPoly::monomial(RingElem::one(spec), -1);
    LaurentPoly y = a.t * substitute(j, a.alpha_in.map());
    return substitute(a.alpha_out.inverse().map(), y);
}

/// The ring of `spec` with one more generic parameter appended.
inline SpecRef with_param(const SpecRef& spec, const std::string& name) {
    auto params = spec->params;
    params.push_back(name);
    return make_spec(spec->num_vars, spec->trunc_order, std::move(params));
}

inline NegAut lift(const NegAut& d, const SpecRef& target) { return NegAut::from_laurent(d.map().lift(target)); }
inline PosAut lift(const PosAut& d, const SpecRef& target) { return PosAut::from_laurent(d.map().lift(target)); }

inline FramedAnnulus lift(const FramedAnnulus& a, const SpecRef& target) {
    return {lift(a.alpha_in, target), a.t.lift(target), lift(a.alpha_out, target)};
}

/// Replace the smoothing parameter by a fresh generic parameter and lift the
/// twists; returns the annulus over the enlarged ring.
inline FramedAnnulus make_generic(const FramedAnnulus& a, const std::string& name = "t") {
    SpecRef target = with_param(a.spec(), name);
    RingElem t = RingElem::param(target, static_cast<int>(target->params.size()) - 1);
    return FramedAnnulus::generic(lift(a.alpha_in, target), t, lift(a.alpha_out, target));
}

/// Transition function over R[t^±1], t replacing the smoothing parameter.
inline LaurentPoly transition_generic(const FramedAnnulus& a, const std::string& name = "t") {
    return transition(make_generic(a, name));
}

/// f o J o g, J(u) = 1/u.
inline LaurentPoly compose_through_antipode(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly j = LaurentPoly::monomial(RingElem::one(g.spec()), -1);
    return substitute(f, substitute(j, g));
}

} // namespace ffc
