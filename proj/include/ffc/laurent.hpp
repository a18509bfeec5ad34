#pragma once

// Laurent polynomials in one variable u over an Artin ring, with
// substitution and compositional inversion.
//
// Every Laurent polynomial we substitute has the shape a*u^d*(1 + n(u)) with
// a a unit and all coefficients of n nilpotent. Its integer powers are then
// finite Laurent polynomials, because n^(N+1) = 0.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "ffc/artin.hpp"

namespace ffc {

class LaurentPoly {
public:
    using Terms = std::map<int, RingElem>;

    LaurentPoly() = default;
    explicit LaurentPoly(SpecRef spec) : spec_(std::move(spec)) {}

    static LaurentPoly monomial(const RingElem& c, int exp) {
        LaurentPoly p(c.spec());
        p.add_term(exp, c);
        return p;
    }
    /// The variable u itself.
    static LaurentPoly u(const SpecRef& spec) { return monomial(RingElem::one(spec), 1); }
    static LaurentPoly constant(const RingElem& c) { return monomial(c, 0); }

    static LaurentPoly from_terms(const SpecRef& spec, const Terms& terms) {
        LaurentPoly p(spec);
        for (const auto& [k, c] : terms) {
            require_same_spec(spec, c.spec());
            p.add_term(k, c);
        }
        return p;
    }

    const SpecRef& spec() const { return spec_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RingElem coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? RingElem::zero(spec_) : it->second;
    }

    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    /// Every coefficient except possibly the u^1 one is nilpotent.
    bool nilpotent_tail() const {
        for (const auto& [k, c] : terms_)
            if (k != 1 && !c.is_nilpotent())
                return false;
        return true;
    }

    /// f = u*w with w a unit at u^0 and nilpotent elsewhere.
    bool unit_form() const { return leading_unit_exponent() == std::optional<int>(1); }

    /// The exponent d when f = a*u^d*(1 + nilpotent) with a a unit.
    std::optional<int> leading_unit_exponent() const {
        std::optional<int> d;
        for (const auto& [k, c] : terms_) {
            if (c.is_nilpotent())
                continue;
            if (d || !c.is_unit())
                return std::nullopt;
            d = k;
        }
        return d;
    }

    bool all_nilpotent() const {
        for (const auto& t : terms_)
            if (!t.second.is_nilpotent())
                return false;
        return true;
    }

    LaurentPoly reduce() const {
        LaurentPoly r(spec_);
        for (const auto& [k, c] : terms_)
            r.add_term(k, c.reduce());
        return r;
    }

    LaurentPoly lift(const SpecRef& target) const {
        LaurentPoly r(target);
        for (const auto& [k, c] : terms_)
            r.add_term(k, c.lift(target));
        return r;
    }

    LaurentPoly map_coeffs(const SpecRef& target, auto&& fn) const {
        LaurentPoly r(target);
        for (const auto& [k, c] : terms_)
            r.add_term(k, fn(c));
        return r;
    }

    /// Multiplicative inverse; needs a leading unit monomial.
    LaurentPoly inverse() const {
        auto d = leading_unit_exponent();
        if (!d)
            fail("NotSubstitutable", "Laurent polynomial " + to_string() + " is not a unit");
        RingElem ainv = coeff(*d).inverse();
        // f = a u^d (1 + x), x has nilpotent coefficients.
        LaurentPoly x(spec_);
        for (const auto& [k, c] : terms_)
            if (k != *d)
                x.add_term(k - *d, c * ainv);
        LaurentPoly minus_x = -x;
        LaurentPoly sum = constant(RingElem::one(spec_));
        LaurentPoly power = sum;
        for (int k = 1; k <= spec_->trunc_order; ++k) {
            power = power * minus_x;
            if (power.is_zero())
                break;
            sum += power;
        }
        return monomial(ainv, -*d) * sum;
    }

    LaurentPoly pow(int k) const {
        if (k < 0)
            return inverse().pow(-k);
        LaurentPoly result = constant(RingElem::one(spec_));
        LaurentPoly base = *this;
        while (k > 0) {
            if (k & 1)
                result = result * base;
            k >>= 1;
            if (k > 0)
                base = base * base;
        }
        return result;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        require_same_spec(spec_, o.spec_);
        for (const auto& [k, c] : o.terms_)
            add_term(k, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        require_same_spec(spec_, o.spec_);
        for (const auto& [k, c] : o.terms_)
            add_term(k, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a) {
        for (auto& t : a.terms_)
            t.second = -t.second;
        return a;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        require_same_spec(a.spec_, b.spec_);
        LaurentPoly r(a.spec_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka + kb, ca * cb);
        return r;
    }
    friend LaurentPoly operator*(const RingElem& s, const LaurentPoly& a) {
        require_same_spec(s.spec(), a.spec_);
        LaurentPoly r(a.spec_);
        for (const auto& [k, c] : a.terms_)
            r.add_term(k, s * c);
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return same_spec(a.spec_, b.spec_) && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            std::string cs = c.to_string();
            bool compound = c.terms().size() > 1;
            bool negative = !compound && cs[0] == '-';
            if (negative)
                cs.erase(0, 1);
            if (!s.empty())
                s += negative ? " - " : " + ";
            else if (negative)
                s += "-";
            std::string coeff = compound ? "(" + cs + ")" : cs;
            if (k == 0)
                s += coeff;
            else {
                std::string upow = k == 1 ? "u" : "u^" + std::to_string(k);
                s += (cs == "1" ? upow : coeff + "*" + upow);
            }
        }
        return s;
    }

private:
    void add_term(int k, const RingElem& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    SpecRef spec_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << f.to_string(); }

/// f o g = sum_k f_k g^k. The substituted polynomial must be a unit
/// monomial times (1 + nilpotent), so every power g^k is finite.
inline LaurentPoly substitute(const LaurentPoly& f, const LaurentPoly& g) {
    require_same_spec(f.spec(), g.spec());
    if (!g.leading_unit_exponent())
        fail("NotSubstitutable", "cannot substitute " + g.to_string() +
                                     ": it is not a unit monomial plus nilpotent terms");
    LaurentPoly result(f.spec());
    if (f.is_zero())
        return result;

    const auto one = LaurentPoly::constant(RingElem::one(f.spec()));
    // Walk the exponents of f outward from 0 so each power costs one product.
    if (f.max_exp() > 0) {
        LaurentPoly power = one;
        int k = 0;
        for (auto it = f.terms().lower_bound(1); it != f.terms().end(); ++it) {
            while (k < it->first) {
                power = power * g;
                ++k;
            }
            result += it->second * power;
        }
    }
    if (f.terms().count(0))
        result += f.coeff(0) * one;
    if (f.min_exp() < 0) {
        LaurentPoly ginv = g.inverse();
        LaurentPoly power = one;
        int k = 0;
        for (auto it = std::make_reverse_iterator(f.terms().lower_bound(0)); it != f.terms().rend(); ++it) {
            while (k > it->first) {
                power = power * ginv;
                --k;
            }
            result += it->second * power;
        }
    }
    return result;
}

/// The h with g o h = h o g = u, for g = a*u + (nilpotent terms), a a unit.
inline LaurentPoly compositional_inverse(const LaurentPoly& g) {
    if (!g.unit_form())
        fail("NotInvertible", "compositional inverse needs a*u + nilpotent terms, got " + g.to_string());
    const SpecRef& spec = g.spec();
    RingElem ainv = g.coeff(1).inverse();
    LaurentPoly rest = g - LaurentPoly::monomial(g.coeff(1), 1);
    LaurentPoly u = LaurentPoly::u(spec);

    // a h + rest(h) = u  =>  h = (u - rest(h)) / a. The error drops one
    // step of the nilpotency filtration per iteration.
    LaurentPoly h = ainv * u;
    for (int iter = 0; iter <= spec->trunc_order + 1; ++iter) {
        LaurentPoly next = ainv * (u - substitute(rest, h));
        if (next == h)
            return h;
        h = std::move(next);
    }
    fail("NotInvertible", "compositional inverse did not stabilise");
}

} // namespace ffc
