#pragma once

// Exact arithmetic in truncated Artin local rings
//
//     Q[e1..em] / (e1..em)^(N+1)  (x)  Q[p1^±1 .. pk^±1]
//
// The e_i are nilpotent deformation parameters truncated by total degree.
// The optional p_j are *generic* parameters: invertible indeterminates that
// are never truncated. With no generic parameters the ring is local and
// Artinian; generic parameters are only adjoined to evaluate transition
// functions of annuli at an invertible smoothing parameter.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffc/error.hpp"

namespace ffc {

using Rational = mpq_class;

struct ArtinSpec {
    int num_vars = 0;    ///< m, names e1..em
    int trunc_order = 1; ///< N, monomials of e-degree > N vanish
    std::vector<std::string> params; ///< generic invertible parameters

    int width() const { return num_vars + static_cast<int>(params.size()); }

    friend bool operator==(const ArtinSpec&, const ArtinSpec&) = default;
};

using SpecRef = std::shared_ptr<const ArtinSpec>;

inline SpecRef make_spec(int num_vars, int trunc_order, std::vector<std::string> params = {}) {
    if (num_vars < 0)
        fail("InvalidSpec", "number of nilpotent variables must be nonnegative");
    if (trunc_order < 1)
        fail("InvalidSpec", "truncation order must be positive");
    return std::make_shared<const ArtinSpec>(ArtinSpec{num_vars, trunc_order, std::move(params)});
}

inline bool same_spec(const SpecRef& a, const SpecRef& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_spec(const SpecRef& a, const SpecRef& b) {
    if (!same_spec(a, b))
        fail("SpecMismatch", "operands live over different Artin rings");
}

/// Same e-variables and order; `to` may adjoin extra generic parameters.
inline void require_extends(const SpecRef& from, const SpecRef& to) {
    bool ok = from->num_vars == to->num_vars && from->trunc_order == to->trunc_order &&
              from->params.size() <= to->params.size() &&
              std::equal(from->params.begin(), from->params.end(), to->params.begin());
    if (!ok)
        fail("SpecMismatch", "target ring does not extend the source ring");
}

/// Exponent vector: first num_vars entries are e-exponents (>= 0), the rest
/// are exponents of generic parameters (any sign).
using Monomial = std::vector<int>;

class RingElem {
public:
    using Terms = std::map<Monomial, Rational>;

    RingElem() = default;
    explicit RingElem(SpecRef spec) : spec_(std::move(spec)) {}

    static RingElem constant(const SpecRef& spec, const Rational& c) {
        RingElem r(spec);
        r.add_term(Monomial(spec->width(), 0), canonical(c));
        return r;
    }
    static RingElem zero(const SpecRef& spec) { return RingElem(spec); }
    static RingElem one(const SpecRef& spec) { return constant(spec, 1); }

    /// The nilpotent generator e_i, 1-based.
    static RingElem var(const SpecRef& spec, int i) {
        if (i < 1 || i > spec->num_vars)
            fail("InvalidArgument", "nilpotent variable e" + std::to_string(i) + " out of range");
        Monomial m(spec->width(), 0);
        m[i - 1] = 1;
        RingElem r(spec);
        r.add_term(std::move(m), 1);
        return r;
    }

    /// Generic parameter number j (0-based) raised to `power`.
    static RingElem param(const SpecRef& spec, int j, int power = 1) {
        if (j < 0 || j >= static_cast<int>(spec->params.size()))
            fail("InvalidArgument", "generic parameter index out of range");
        Monomial m(spec->width(), 0);
        m[spec->num_vars + j] = power;
        RingElem r(spec);
        r.add_term(std::move(m), 1);
        return r;
    }

    static RingElem from_terms(const SpecRef& spec, const Terms& terms) {
        RingElem r(spec);
        for (const auto& [m, c] : terms) {
            if (static_cast<int>(m.size()) != spec->width())
                fail("InvalidArgument", "monomial has wrong number of exponents");
            for (int i = 0; i < spec->num_vars; ++i)
                if (m[i] < 0)
                    fail("InvalidArgument", "negative exponent on a nilpotent variable");
            r.add_term(m, canonical(c));
        }
        return r;
    }

    const SpecRef& spec() const { return spec_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    /// Total e-degree of a monomial.
    int eps_degree(const Monomial& m) const {
        return std::accumulate(m.begin(), m.begin() + spec_->num_vars, 0);
    }

    /// The e-free part (an element of Q[params^±1]).
    RingElem constant_part() const {
        RingElem r(spec_);
        for (const auto& [m, c] : terms_)
            if (eps_degree(m) == 0)
                r.terms_.emplace(m, c);
        return r;
    }

    /// Coefficient of the monomial 1.
    Rational constant_term() const {
        auto it = terms_.find(Monomial(spec_->width(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Smallest e-degree among the terms; trunc_order + 1 for zero.
    int order() const {
        int o = spec_->trunc_order + 1;
        for (const auto& t : terms_)
            o = std::min(o, eps_degree(t.first));
        return o;
    }

    bool is_nilpotent() const { return order() >= 1; }

    /// Units are exactly the elements whose e-free part is a single nonzero
    /// monomial of Q[params^±1] (a nonzero constant when there are no params).
    bool is_unit() const {
        std::size_t n = 0;
        for (const auto& t : terms_)
            if (eps_degree(t.first) == 0)
                ++n;
        return n == 1;
    }

    RingElem inverse() const {
        RingElem c = constant_part();
        if (c.terms_.size() != 1)
            fail("NotAUnit", "element " + to_string() + " is not invertible");
        const auto& [cm, cv] = *c.terms_.begin();
        Monomial inv_m(cm.size());
        std::transform(cm.begin(), cm.end(), inv_m.begin(), [](int e) { return -e; });
        RingElem cinv(spec_);
        cinv.terms_.emplace(std::move(inv_m), Rational(1) / cv);

        // a = c(1 + x) with x nilpotent, a^-1 = c^-1 * sum_k (-x)^k.
        RingElem x = (*this - c) * cinv;
        RingElem minus_x = -x;
        RingElem sum = one(spec_);
        RingElem power = one(spec_);
        for (int k = 1; k <= spec_->trunc_order; ++k) {
            power = power * minus_x;
            if (power.is_zero())
                break;
            sum += power;
        }
        return cinv * sum;
    }

    RingElem pow(int k) const {
        if (k < 0)
            return inverse().pow(-k);
        RingElem result = one(spec_);
        RingElem base = *this;
        while (k > 0) {
            if (k & 1)
                result = result * base;
            k >>= 1;
            if (k > 0)
                base = base * base;
        }
        return result;
    }

    /// Reduction modulo the nilpotent ideal (e_i -> 0).
    RingElem reduce() const { return constant_part(); }

    /// Image in a ring that adjoins further generic parameters.
    RingElem lift(const SpecRef& target) const {
        require_extends(spec_, target);
        RingElem r(target);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm.resize(target->width(), 0);
            r.terms_.emplace(std::move(mm), c);
        }
        return r;
    }

    /// Ring map sending generic parameter j to `value`; all remaining
    /// parameters must be removed from the spec as well, so the image lives
    /// over `target` whose params are a prefix of ours minus the substituted
    /// ones. Negative powers need `value` to be a unit.
    RingElem specialize(const SpecRef& target, const std::vector<std::pair<int, RingElem>>& values) const;

    RingElem& operator+=(const RingElem& o) {
        require_same_spec(spec_, o.spec_);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    RingElem& operator-=(const RingElem& o) {
        require_same_spec(spec_, o.spec_);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator-(RingElem a) {
        for (auto& t : a.terms_)
            t.second = -t.second;
        return a;
    }

    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        require_same_spec(a.spec_, b.spec_);
        RingElem r(a.spec_);
        const int N = a.spec_->trunc_order;
        Monomial prod(a.spec_->width());
        for (const auto& [ma, ca] : a.terms_) {
            int da = a.eps_degree(ma);
            for (const auto& [mb, cb] : b.terms_) {
                if (da + a.eps_degree(mb) > N)
                    continue;
                for (std::size_t i = 0; i < prod.size(); ++i)
                    prod[i] = ma[i] + mb[i];
                r.add_term(prod, ca * cb);
            }
        }
        return r;
    }

    friend RingElem operator*(const Rational& scalar, RingElem a) {
        Rational s = canonical(scalar);
        if (s == 0)
            return RingElem(a.spec_);
        for (auto& t : a.terms_)
            t.second *= s;
        return a;
    }

    friend bool operator==(const RingElem& a, const RingElem& b) {
        return same_spec(a.spec_, b.spec_) && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    static Rational canonical(Rational c) {
        c.canonicalize();
        return c;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0)
            return;
        if (eps_degree(m) > spec_->trunc_order)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    SpecRef spec_;
    Terms terms_;
};

inline std::string RingElem::to_string() const {
    if (terms_.empty())
        return "0";
    // Print by increasing e-degree, then lexicographically.
    std::vector<std::pair<const Monomial*, const Rational*>> order;
    for (const auto& [m, c] : terms_)
        order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(), [this](const auto& x, const auto& y) {
        return eps_degree(*x.first) < eps_degree(*y.first);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [mp, cp] : order) {
        const Monomial& m = *mp;
        Rational c = *cp;
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int i = 0; i < spec_->width(); ++i) {
            if (m[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += i < spec_->num_vars ? "e" + std::to_string(i + 1)
                                        : spec_->params[i - spec_->num_vars];
            if (m[i] != 1)
                mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty())
            os << c.get_str();
        else if (c == 1)
            os << mono;
        else
            os << c.get_str() << "*" << mono;
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.to_string(); }

inline RingElem RingElem::specialize(const SpecRef& target,
                                     const std::vector<std::pair<int, RingElem>>& values) const {
    // Parameters of `this` that are not substituted map, in order, onto the
    // parameters of `target`.
    const int m = spec_->num_vars;
    const int p = static_cast<int>(spec_->params.size());
    std::vector<const RingElem*> image(p, nullptr);
    for (const auto& [j, v] : values) {
        if (j < 0 || j >= p)
            fail("InvalidArgument", "specialized parameter out of range");
        require_same_spec(v.spec(), target);
        image[j] = &v;
    }
    std::vector<int> keep;
    for (int j = 0; j < p; ++j)
        if (!image[j])
            keep.push_back(j);
    if (target->num_vars != m || target->trunc_order != spec_->trunc_order ||
        static_cast<int>(target->params.size()) != static_cast<int>(keep.size()))
        fail("SpecMismatch", "specialization target has the wrong shape");

    RingElem r(target);
    for (const auto& [mono, c] : terms_) {
        Monomial base(target->width(), 0);
        std::copy(mono.begin(), mono.begin() + m, base.begin());
        for (std::size_t k = 0; k < keep.size(); ++k)
            base[m + k] = mono[m + keep[k]];
        RingElem term(target);
        term.add_term(base, c);
        for (int j = 0; j < p; ++j)
            if (image[j] && mono[m + j] != 0)
                term = term * image[j]->pow(mono[m + j]);
        r += term;
    }
    return r;
}

} // namespace ffc
