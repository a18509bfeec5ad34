#pragma once

// The group A_m of connected automorphisms of G_m over an Artin ring, its
// unipotent halves A_m^- and A_m^+, normal-ordered factorization
//
//     f = d_neg o m_e o d_pos,    m_e(x) = e*x,
//
// and the unital monoid obtained by letting the middle coordinate e range
// over the whole ring instead of its units.
//
// Group elements are stored as the Laurent polynomial of the map x -> f(x);
// composition is substitution.

#include <string>
#include <utility>
#include <vector>

#include "ffc/laurent.hpp"

namespace ffc {

/// x -> c*x*(1 + n(x)), c a unit and n with nilpotent coefficients.
class WittAut {
public:
    WittAut() = default;

    static WittAut from_laurent(LaurentPoly map) {
        if (!map.unit_form())
            fail("InvalidArgument", "not an automorphism of G_m: " + map.to_string());
        WittAut f;
        f.map_ = std::move(map);
        return f;
    }

    static WittAut from_parts(const RingElem& c, const LaurentPoly& n) {
        if (!c.is_unit())
            fail("NotAUnit", "scaling part of an automorphism must be a unit");
        if (!n.all_nilpotent())
            fail("InvalidArgument", "correction of an automorphism must be nilpotent");
        LaurentPoly x = LaurentPoly::u(c.spec());
        return from_laurent(c * x * (LaurentPoly::constant(RingElem::one(c.spec())) + n));
    }

    static WittAut identity(const SpecRef& spec) { return from_laurent(LaurentPoly::u(spec)); }
    static WittAut scaling(const RingElem& c) { return from_laurent(LaurentPoly::monomial(c, 1)); }

    const LaurentPoly& map() const { return map_; }
    const SpecRef& spec() const { return map_.spec(); }

    RingElem c() const { return map_.coeff(1); }

    /// n with map = c*x*(1 + n(x)); n has no constant term.
    LaurentPoly n() const {
        RingElem cinv = c().inverse();
        LaurentPoly out(spec());
        for (const auto& [k, a] : map_.terms())
            if (k != 1)
                out += LaurentPoly::monomial(cinv * a, k - 1);
        return out;
    }

    friend bool operator==(const WittAut&, const WittAut&) = default;

private:
    LaurentPoly map_;
};

inline WittAut compose_aut(const WittAut& f, const WittAut& g) {
    require_same_spec(f.spec(), g.spec());
    return WittAut::from_laurent(substitute(f.map(), g.map()));
}

inline WittAut invert_aut(const WittAut& f) {
    return WittAut::from_laurent(compositional_inverse(f.map()));
}

namespace detail {

// x + sum_{n>=1} a_n x^(1 + sign*n), a_n nilpotent.
template <int Sign>
class UnipotentAut {
public:
    UnipotentAut() = default;
    explicit UnipotentAut(const SpecRef& spec) : map_(LaurentPoly::u(spec)) {}

    static UnipotentAut from_laurent(LaurentPoly map) {
        for (const auto& [k, c] : map.terms()) {
            if (k == 1) {
                if (!(c == RingElem::one(map.spec())))
                    fail("InvalidArgument", "unipotent automorphism must have leading coefficient 1");
                continue;
            }
            if (Sign > 0 ? k < 2 : k > 0)
                fail("InvalidArgument", std::string(Sign > 0 ? "positive" : "negative") +
                                            " automorphism has a term u^" + std::to_string(k));
            if (!c.is_nilpotent())
                fail("InvalidArgument", "unipotent automorphism coefficients must be nilpotent");
        }
        if (map.coeff(1).is_zero())
            fail("InvalidArgument", "unipotent automorphism must have leading coefficient 1");
        UnipotentAut d;
        d.map_ = std::move(map);
        return d;
    }

    /// coeffs[0] is a_1.
    static UnipotentAut from_coeffs(const SpecRef& spec, const std::vector<RingElem>& coeffs) {
        LaurentPoly map = LaurentPoly::u(spec);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            map += LaurentPoly::monomial(coeffs[i], 1 + Sign * static_cast<int>(i + 1));
        return from_laurent(std::move(map));
    }

    /// a_1..a_K, trailing zeros trimmed.
    std::vector<RingElem> coeffs() const {
        std::vector<RingElem> out;
        int K = 0;
        for (const auto& [k, c] : map_.terms())
            if (k != 1)
                K = std::max(K, Sign * (k - 1));
        for (int n = 1; n <= K; ++n)
            out.push_back(map_.coeff(1 + Sign * n));
        return out;
    }

    bool is_identity() const { return map_.terms().size() == 1; }

    const LaurentPoly& map() const { return map_; }
    const SpecRef& spec() const { return map_.spec(); }
    WittAut as_aut() const { return WittAut::from_laurent(map_); }

    UnipotentAut inverse() const { return from_laurent(compositional_inverse(map_)); }

    /// Coefficient map a_n -> c^n a_n (conjugation by the scaling c when c is
    /// a unit; a polynomial expression in c in general).
    UnipotentAut rescale(const RingElem& c) const {
        require_same_spec(spec(), c.spec());
        LaurentPoly map = LaurentPoly::u(spec());
        RingElem power = RingElem::one(spec());
        auto a = coeffs();
        for (std::size_t i = 0; i < a.size(); ++i) {
            power = power * c;
            map += LaurentPoly::monomial(power * a[i], 1 + Sign * static_cast<int>(i + 1));
        }
        return from_laurent(std::move(map));
    }

    UnipotentAut reduce() const { return from_laurent(map_.reduce()); }

    friend UnipotentAut operator*(const UnipotentAut& f, const UnipotentAut& g) {
        return from_laurent(substitute(f.map_, g.map_));
    }

    friend bool operator==(const UnipotentAut&, const UnipotentAut&) = default;
    friend std::ostream& operator<<(std::ostream& os, const UnipotentAut& d) { return os << d.map_; }

private:
    LaurentPoly map_;
};

} // namespace detail

/// x -> x*(1 + sum a_n x^-n): the subgroup A_m^-, which as a set of maps is
/// the family u + e(u^-1) reparametrizing framings of annuli.
using NegAut = detail::UnipotentAut<-1>;
/// x -> x*(1 + sum b_n x^n): the subgroup A_m^+.
using PosAut = detail::UnipotentAut<+1>;

/// Conjugation by the antipode J(x) = 1/x, which swaps A_m^+ and A_m^-.
inline LaurentPoly antipodal_conjugate(const LaurentPoly& map) {
    LaurentPoly j = LaurentPoly::monomial(RingElem::one(map.spec()), -1);
    return substitute(j, substitute(map, j));
}
inline PosAut antipodal(const NegAut& d) { return PosAut::from_laurent(antipodal_conjugate(d.map())); }
inline NegAut antipodal(const PosAut& d) { return NegAut::from_laurent(antipodal_conjugate(d.map())); }

inline NegAut scale_conjugate_neg(const NegAut& d, const RingElem& c) { return d.rescale(c); }
inline PosAut scale_conjugate_pos(const PosAut& d, const RingElem& c) { return d.rescale(c); }

/// A point of the monoid A_m^- x A^1 x A_m^+.
struct NormalForm {
    NegAut neg;
    RingElem mid;
    PosAut pos;

    static NormalForm identity(const SpecRef& spec) {
        return {NegAut(spec), RingElem::one(spec), PosAut(spec)};
    }
    static NormalForm scaling(const RingElem& c) { return {NegAut(c.spec()), c, PosAut(c.spec())}; }

    const SpecRef& spec() const { return mid.spec(); }

    NormalForm reduce() const { return {neg.reduce(), mid.reduce(), pos.reduce()}; }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const WittAut& f) { return os << f.map(); }
inline std::ostream& operator<<(std::ostream& os, const NormalForm& a) {
    return os << "(" << a.neg << " | " << a.mid << " | " << a.pos << ")";
}

/// Unique f = d_neg o m_e o d_pos. Peels the lowest nilpotency order of the
/// residual each round: negative powers go to d_neg, positive to d_pos, the
/// linear coefficient is e. At most N rounds.
inline NormalForm birkhoff_factor(const WittAut& f) {
    const SpecRef& spec = f.spec();
    NegAut dneg(spec);
    PosAut dpos(spec);
    for (int round = 0; round <= spec->trunc_order + 1; ++round) {
        LaurentPoly g = substitute(dneg.inverse().map(), substitute(f.map(), dpos.inverse().map()));
        RingElem e = g.coeff(1);
        if (g.terms().size() == 1)
            return {dneg, e, dpos};

        RingElem einv = e.inverse();
        LaurentPoly neg_piece = LaurentPoly::u(spec);
        LaurentPoly pos_piece = LaurentPoly::u(spec);
        for (const auto& [k, c] : g.terms()) {
            if (k == 1)
                continue;
            RingElem h = c * einv; // coefficient of x^(k-1) in g/(e x) - 1
            if (k >= 2)
                pos_piece += LaurentPoly::monomial(h, k);
            else // conjugate x^(k-1) through m_e: coefficient times e^(1-k)
                neg_piece += LaurentPoly::monomial(h * e.pow(1 - k), k);
        }
        dneg = dneg * NegAut::from_laurent(neg_piece);
        dpos = PosAut::from_laurent(pos_piece) * dpos;
    }
    fail("InternalError", "normal-ordered factorization did not terminate");
}

inline WittAut as_automorphism(const NormalForm& a) {
    if (!a.mid.is_unit())
        fail("MidNotAUnit", "middle coordinate " + a.mid.to_string() + " is not a unit");
    LaurentPoly scaled = LaurentPoly::monomial(a.mid, 1);
    return WittAut::from_laurent(substitute(a.neg.map(), substitute(scaled, a.pos.map())));
}

/// Monoid law: factor pos_A o neg_B, then push the pieces through the
/// middle coordinates. Polynomial in the middle coordinates, so it is the
/// algebraic extension of composition to non-unit mids.
inline NormalForm normal_product(const NormalForm& a, const NormalForm& b) {
    require_same_spec(a.spec(), b.spec());
    NormalForm inner = birkhoff_factor(compose_aut(a.pos.as_aut(), b.neg.as_aut()));
    return {a.neg * scale_conjugate_neg(inner.neg, a.mid), a.mid * inner.mid * b.mid,
            scale_conjugate_pos(inner.pos, b.mid) * b.pos};
}

inline NormalForm operator*(const NormalForm& a, const NormalForm& b) { return normal_product(a, b); }

} // namespace ffc
