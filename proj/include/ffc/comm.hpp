#pragma once

// The operad Comm_G of a monoid G: operations of arity n are n-tuples of
// elements, and
//
//     (g_1..g_n) o_i (h_1..h_m) = (g_1..g_{i-1}, h_1 g_i .. h_m g_i, g_{i+1}..g_n).

#include <vector>

#include "ffc/error.hpp"

namespace ffc {

/// The one-element monoid.
struct TrivialMonoid {
    friend TrivialMonoid operator*(TrivialMonoid, TrivialMonoid) { return {}; }
    friend bool operator==(TrivialMonoid, TrivialMonoid) { return true; }
};

template <class G>
std::vector<G> comm_compose(const std::vector<G>& g, int i, const std::vector<G>& h) {
    if (i < 0 || i >= static_cast<int>(g.size()))
        fail("SlotOutOfRange", "composition slot out of range");
    std::vector<G> out(g.begin(), g.begin() + i);
    for (const auto& x : h)
        out.push_back(x * g[i]);
    out.insert(out.end(), g.begin() + i + 1, g.end());
    return out;
}

/// New position sigma[k] holds old entry k.
template <class G>
std::vector<G> comm_permute(const std::vector<G>& g, const std::vector<int>& sigma) {
    if (sigma.size() != g.size())
        fail("InvalidArgument", "permutation size differs from the arity");
    std::vector<G> out(g);
    for (std::size_t k = 0; k < g.size(); ++k)
        out.at(sigma[k]) = g[k];
    return out;
}

/// All operations of arity n over a finite monoid given by its elements.
template <class G>
std::vector<std::vector<G>> comm_operations(const std::vector<G>& elements, int n) {
    std::vector<std::vector<G>> out{{}};
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<G>> next;
        for (const auto& op : out)
            for (const auto& e : elements) {
                next.push_back(op);
                next.back().push_back(e);
            }
        out = std::move(next);
    }
    return out;
}

} // namespace ffc
