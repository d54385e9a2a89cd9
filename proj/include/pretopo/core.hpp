#pragma once

#include "pretopo/element_set.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pretopo {

// Dense item indices 0..n-1 with optional unique external names.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::size_t size);
    explicit Universe(std::vector<std::string> labels);

    std::size_t size() const noexcept { return size_; }
    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    // Stored label, or the decimal index when the universe is unlabeled.
    std::string label(std::size_t x) const;

    ElementSet empty_set() const { return ElementSet(size_); }
    ElementSet full_set() const { return ElementSet::full(size_); }

private:
    std::size_t size_ = 0;
    std::vector<std::string> labels_;
};

// Per item x a non-empty list of basis sets B_1(x)..B_K(x), each containing x.
class NeighborhoodBasis {
public:
    NeighborhoodBasis() = default;
    NeighborhoodBasis(std::size_t universe_size, std::vector<std::vector<ElementSet>> bases);

    std::size_t universe_size() const noexcept { return n_; }
    const std::vector<ElementSet>& of(std::size_t x) const;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<ElementSet>> bases_;
};

enum class SpaceKind { Prefilter, Filter, Graph };

const char* to_string(SpaceKind kind);

/**
 * A finite pretopological space (U, a(.)).
 *
 *  - Prefilter: x in a(A) iff every basis set of x meets A.
 *  - Filter:    x in a(A) iff the intersection of the basis sets of x meets A.
 *  - Graph:     a(A) = A plus every successor of a member of A.
 *
 * Immutable after construction.
 */
class PseudoclosureSpace {
public:
    PseudoclosureSpace() = default;

    static PseudoclosureSpace prefilter(Universe universe, NeighborhoodBasis basis);
    static PseudoclosureSpace filter(Universe universe, NeighborhoodBasis basis);
    static PseudoclosureSpace graph(Universe universe, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    SpaceKind kind() const noexcept { return kind_; }
    const Universe& universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return universe_.size(); }

    // Neighborhood kinds only.
    const NeighborhoodBasis& basis() const;
    // Graph kind only; sorted and deduplicated.
    const std::vector<std::size_t>& successors(std::size_t x) const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    ElementSet apply(const ElementSet& a) const;

    // Single set per item whose intersection with A decides membership for
    // Filter ({x} plus predecessors for Graph); empty for Prefilter.
    const std::vector<ElementSet>& kernels() const noexcept { return kernels_; }

private:
    Universe universe_;
    SpaceKind kind_ = SpaceKind::Graph;
    NeighborhoodBasis basis_;
    std::vector<std::vector<std::size_t>> successors_;
    std::vector<ElementSet> kernels_;
};

// Any candidate pseudoclosure over {0..n-1}; used by the property checks so
// they can also be pointed at operators that are not PseudoclosureSpaces.
using PseudoclosureFn = std::function<ElementSet(const ElementSet&)>;

ElementSet pseudoclosure(const PseudoclosureSpace& space, const ElementSet& a);

// Iterates a(.) from A until a fixed point.
ElementSet closure(const PseudoclosureSpace& space, const ElementSet& a);
ElementSet closure(const PseudoclosureFn& fn, const ElementSet& a);

// A, a(A), a(a(A)), ... up to and including the fixed point.
std::vector<ElementSet> closure_trace(const PseudoclosureSpace& space, const ElementSet& a);

// i(A) = a(A^c)^c
ElementSet interior(const PseudoclosureSpace& space, const ElementSet& a);

// Generating family of V(x): the stored basis (Prefilter), the intersection
// basis (Filter), or {x} plus predecessors (Graph).
std::vector<ElementSet> neighborhoods_of(const PseudoclosureSpace& space, std::size_t x);

// Universes up to this size are checked exhaustively; larger ones are sampled.
inline constexpr std::size_t exhaustive_limit = 12;

struct CheckOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
};

struct PropertyCheck {
    bool holds = true;
    bool exhaustive = false;
    // (A, B) violating the property for the first offending pair found.
    std::optional<std::pair<ElementSet, ElementSet>> witness;

    explicit operator bool() const noexcept { return holds; }
};

// A subset of B implies a(A) subset of a(B).
PropertyCheck check_isotony(const PseudoclosureSpace& space, CheckOptions options = {});
PropertyCheck check_isotony(const PseudoclosureFn& fn, std::size_t universe_size, CheckOptions options = {});

// a(A u B) = a(A) u a(B).
PropertyCheck check_additivity(const PseudoclosureSpace& space, CheckOptions options = {});
PropertyCheck check_additivity(const PseudoclosureFn& fn, std::size_t universe_size, CheckOptions options = {});

// Neighborhood families recovered from an isotone pseudoclosure:
// result[x] holds the minimal sets V with x in i(V). Requires
// universe_size <= exhaustive_limit.
std::vector<std::vector<ElementSet>> derive_neighborhoods(const PseudoclosureFn& fn, std::size_t universe_size);

// Rebuilds the pseudoclosure from derive_neighborhoods and compares it with
// the original on every subset. Throws Unsupported for non-isotone spaces.
bool pseudoclosure_from_prefilter_roundtrip(const PseudoclosureSpace& space);
bool pseudoclosure_from_prefilter_roundtrip(const PseudoclosureFn& fn, std::size_t universe_size);

} // namespace pretopo
