#pragma once

// Random fixtures and brute-force oracles shared by the unit and acceptance tests.

#include "pretopo/core.hpp"
#include "pretopo/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pretopo::testing {

inline ElementSet random_subset(std::size_t n, SplitMix64& rng, double p = 0.5)
{
    ElementSet s(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.uniform() < p)
            s.insert(i);
    return s;
}

inline NeighborhoodBasis random_basis(std::size_t n, SplitMix64& rng, std::size_t max_sets = 3)
{
    std::vector<std::vector<ElementSet>> bases(n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto k = 1 + rng.below(max_sets);
        for (std::size_t j = 0; j < k; ++j) {
            auto b = random_subset(n, rng, 0.35);
            b.insert(x);
            bases[x].push_back(b);
        }
    }
    return NeighborhoodBasis(n, std::move(bases));
}

inline std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::size_t n, SplitMix64& rng, double p = 0.25)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && rng.uniform() < p)
                edges.emplace_back(a, b);
    return edges;
}

// Random space of the given kind (0 prefilter, 1 filter, 2 graph).
inline PseudoclosureSpace random_space(std::size_t n, int kind, SplitMix64& rng)
{
    switch (kind) {
    case 0: return PseudoclosureSpace::prefilter(Universe(n), random_basis(n, rng));
    case 1: return PseudoclosureSpace::filter(Universe(n), random_basis(n, rng));
    default: return PseudoclosureSpace::graph(Universe(n), random_edges(n, rng));
    }
}

// Direct evaluation of the neighborhood definition over the basis, element by element.
inline ElementSet brute_pseudoclosure(const PseudoclosureSpace& space, const ElementSet& a)
{
    const auto n = space.size();
    ElementSet out(n);
    for (std::size_t x = 0; x < n; ++x) {
        bool in = false;
        if (space.kind() == SpaceKind::Graph) {
            in = a.contains(x);
            for (std::size_t y = 0; y < n && !in; ++y)
                if (a.contains(y))
                    for (auto s : space.successors(y))
                        in = in || s == x;
        } else if (space.kind() == SpaceKind::Prefilter) {
            in = true;
            for (const auto& b : space.basis().of(x)) {
                bool meets = false;
                for (std::size_t y = 0; y < n; ++y)
                    meets = meets || (b.contains(y) && a.contains(y));
                in = in && meets;
            }
        } else {
            for (std::size_t y = 0; y < n && !in; ++y) {
                bool in_all = a.contains(y);
                for (const auto& b : space.basis().of(x))
                    in_all = in_all && b.contains(y);
                in = in_all;
            }
        }
        if (in)
            out.insert(x);
    }
    return out;
}

// Smallest closed superset: intersection of all fixed points containing A.
inline ElementSet brute_smallest_closed(const PseudoclosureSpace& space, const ElementSet& a)
{
    const auto n = space.size();
    auto best = ElementSet::full(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto s = ElementSet::from_mask(n, m);
        if (a.is_subset_of(s) && pseudoclosure(space, s) == s)
            best &= s;
    }
    return best;
}

// ARI from the four pair counts, enumerating every pair of items.
inline double pair_counting_ari(const std::vector<int>& p, const std::vector<int>& q)
{
    double same_same = 0, same_diff = 0, diff_same = 0, diff_diff = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const bool sp = p[i] == p[j];
            const bool sq = q[i] == q[j];
            if (sp && sq)
                ++same_same;
            else if (sp)
                ++same_diff;
            else if (sq)
                ++diff_same;
            else
                ++diff_diff;
        }
    const double num = 2.0 * (same_same * diff_diff - same_diff * diff_same);
    const double den =
        (same_same + diff_same) * (diff_same + diff_diff) + (same_same + same_diff) * (same_diff + diff_diff);
    return den == 0.0 ? 1.0 : num / den;
}

} // namespace pretopo::testing
