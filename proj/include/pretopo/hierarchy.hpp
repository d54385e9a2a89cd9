#pragma once

#include "pretopo/core.hpp"
#include "pretopo/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pretopo {

// How FindNeighbors picks the next node of a seed path. Candidates are always
// the unvisited members of a({last}), the pseudoclosure of the last treated
// node.
struct SeedFunction {
    enum class Kind { ClosestNode, RandomNeighbor };

    Kind kind = Kind::ClosestNode;
    std::uint64_t rng_seed = 0; // RandomNeighbor only

    static SeedFunction closest() { return {Kind::ClosestNode, 0}; }
    static SeedFunction random(std::uint64_t seed) { return {Kind::RandomNeighbor, seed}; }
};

// Optional ranking distance for ClosestNode; see dissimilarity_matrix().
class Dissimilarity {
public:
    Dissimilarity() = default;
    explicit Dissimilarity(DenseMatrix m);

    bool available() const noexcept { return matrix_.has_value(); }
    double operator()(std::size_t a, std::size_t b) const;

private:
    std::optional<DenseMatrix> matrix_;
};

struct Seed {
    std::size_t origin = 0;
    ElementSet members;
};

// Deduplicated sets in canonical order (cardinality, then lexicographic).
class ClosedFamily {
public:
    ClosedFamily() = default;
    explicit ClosedFamily(std::vector<ElementSet> sets);

    std::size_t size() const noexcept { return sets_.size(); }
    bool empty() const noexcept { return sets_.empty(); }
    const ElementSet& operator[](std::size_t i) const { return sets_[i]; }
    const std::vector<ElementSet>& sets() const noexcept { return sets_; }
    std::optional<std::size_t> index_of(const ElementSet& s) const;

    auto begin() const noexcept { return sets_.begin(); }
    auto end() const noexcept { return sets_.end(); }

private:
    std::vector<ElementSet> sets_;
};

enum class TieBreak { LowestIndex, Random };

struct HierarchyOptions {
    double threshold = 0.5; // th_qh
    TieBreak tie_break = TieBreak::LowestIndex;
    std::uint64_t rng_seed = 0; // TieBreak::Random only
};

struct ParentEdge {
    std::size_t parent = 0;
    std::size_t child = 0;
    double weight = 0.0;

    friend bool operator==(const ParentEdge&, const ParentEdge&) = default;
};

struct QuasiHierarchy {
    std::size_t universe_size = 0;
    ClosedFamily family;   // surviving sets (QF_qh)
    DenseMatrix adjacency; // over `family`
    double threshold = 0.5;
    std::vector<ParentEdge> parent_edges; // sorted by (parent, child)
    std::vector<std::size_t> roots;       // ascending family indices
    ElementSet coverage;
    std::size_t pruned = 0; // sets removed as equivalents
};

struct ClusteringResult {
    std::vector<std::optional<std::size_t>> assignment; // item -> cluster
    std::vector<ElementSet> clusters;
    ElementSet outliers;
    QuasiHierarchy hierarchy;
};

// Walks up to `degree` steps from first_node, each step moving to an
// unvisited member of a({last}). ClosestNode takes the nearest candidate
// under `distance` (ties to the lower index); RandomNeighbor draws
// uniformly from a stream derived from (rng_seed, first_node). Stops early
// when no candidate is left.
std::vector<std::size_t> find_neighbors(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                        std::size_t first_node, std::size_t degree, const SeedFunction& seed_func);

// One seed per item, ordered by origin.
std::vector<Seed> elementary_quasiclosures(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                           std::size_t degree, const SeedFunction& seed_func);

// Every seed plus every set reached by iterating a(.) on it, processed in
// increasing size so that each distinct set is expanded once.
ClosedFamily elementary_closed_subsets(const PseudoclosureSpace& space, const std::vector<Seed>& seeds);

// adjacency(F, G) = (|F| / |G|) * (|F n G| / |G|) for distinct intersecting
// sets, zero otherwise.
DenseMatrix extract_adjacency(const ClosedFamily& family);

QuasiHierarchy extract_quasihierarchy(const ClosedFamily& family, const DenseMatrix& adjacency,
                                      const HierarchyOptions& options);

QuasiHierarchy quasistructural_analysis(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                        std::size_t degree, const SeedFunction& seed_func,
                                        const HierarchyOptions& options);

ClusteringResult flatten(const QuasiHierarchy& hierarchy);

} // namespace pretopo
