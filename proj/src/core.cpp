#include "pretopo/core.hpp"

#include "pretopo/errors.hpp"
#include "pretopo/rng.hpp"

#include <algorithm>
#include <unordered_set>

namespace pretopo {

Universe::Universe(std::size_t size) : size_(size) {}

Universe::Universe(std::vector<std::string> labels) : size_(labels.size()), labels_(std::move(labels))
{
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw ConfigError("duplicate item label '" + l + "'");
}

std::string Universe::label(std::size_t x) const
{
    if (x >= size_)
        throw ContractViolation("item index " + std::to_string(x) + " out of range");
    return labels_.empty() ? std::to_string(x) : labels_[x];
}

NeighborhoodBasis::NeighborhoodBasis(std::size_t universe_size, std::vector<std::vector<ElementSet>> bases)
    : n_(universe_size), bases_(std::move(bases))
{
    if (bases_.size() != n_)
        throw ContractViolation("neighborhood basis must list exactly one family per item");
    for (std::size_t x = 0; x < n_; ++x) {
        if (bases_[x].empty())
            throw ContractViolation("item " + std::to_string(x) + " has an empty neighborhood basis");
        for (const auto& b : bases_[x]) {
            if (b.universe_size() != n_)
                throw ContractViolation("basis set of item " + std::to_string(x) + " is over a different universe");
            if (!b.contains(x))
                throw ContractViolation("basis set of item " + std::to_string(x) + " does not contain the item");
        }
    }
}

const std::vector<ElementSet>& NeighborhoodBasis::of(std::size_t x) const
{
    if (x >= n_)
        throw ContractViolation("item index " + std::to_string(x) + " out of range");
    return bases_[x];
}

const char* to_string(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::Prefilter: return "prefilter";
    case SpaceKind::Filter: return "filter";
    case SpaceKind::Graph: return "graph";
    }
    return "?";
}

namespace {

void check_basis_universe(const Universe& u, const NeighborhoodBasis& b)
{
    if (u.size() != b.universe_size())
        throw ContractViolation("basis and universe sizes differ");
}

void check_member_of(const PseudoclosureSpace& space, const ElementSet& a)
{
    if (a.universe_size() != space.size())
        throw ContractViolation("set is over a universe of size " + std::to_string(a.universe_size()) +
                                ", space has " + std::to_string(space.size()));
}

} // namespace

PseudoclosureSpace PseudoclosureSpace::prefilter(Universe universe, NeighborhoodBasis basis)
{
    check_basis_universe(universe, basis);
    PseudoclosureSpace s;
    s.universe_ = std::move(universe);
    s.kind_ = SpaceKind::Prefilter;
    s.basis_ = std::move(basis);
    return s;
}

PseudoclosureSpace PseudoclosureSpace::filter(Universe universe, NeighborhoodBasis basis)
{
    check_basis_universe(universe, basis);
    PseudoclosureSpace s;
    s.universe_ = std::move(universe);
    s.kind_ = SpaceKind::Filter;
    s.kernels_.reserve(s.universe_.size());
    for (std::size_t x = 0; x < s.universe_.size(); ++x) {
        ElementSet k = basis.of(x).front();
        for (const auto& b : basis.of(x))
            k &= b;
        s.kernels_.push_back(std::move(k));
    }
    s.basis_ = std::move(basis);
    return s;
}

PseudoclosureSpace PseudoclosureSpace::graph(Universe universe,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    PseudoclosureSpace s;
    const auto n = universe.size();
    s.universe_ = std::move(universe);
    s.kind_ = SpaceKind::Graph;
    s.successors_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x)
        s.kernels_.emplace_back(n, std::initializer_list<std::size_t>{x});
    for (auto [from, to] : edges) {
        if (from >= n || to >= n)
            throw ContractViolation("edge " + std::to_string(from) + "->" + std::to_string(to) +
                                    " references an item outside the universe");
        s.successors_[from].push_back(to);
        s.kernels_[to].insert(from);
    }
    for (auto& succ : s.successors_) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
    return s;
}

const NeighborhoodBasis& PseudoclosureSpace::basis() const
{
    if (kind_ == SpaceKind::Graph)
        throw Unsupported("graph spaces carry no neighborhood basis");
    return basis_;
}

const std::vector<std::size_t>& PseudoclosureSpace::successors(std::size_t x) const
{
    if (kind_ != SpaceKind::Graph)
        throw Unsupported("successors are only defined for graph spaces");
    if (x >= successors_.size())
        throw ContractViolation("item index " + std::to_string(x) + " out of range");
    return successors_[x];
}

std::vector<std::pair<std::size_t, std::size_t>> PseudoclosureSpace::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < successors_.size(); ++x)
        for (auto y : successors_[x])
            out.emplace_back(x, y);
    return out;
}

ElementSet PseudoclosureSpace::apply(const ElementSet& a) const
{
    check_member_of(*this, a);
    ElementSet result = a;
    const auto n = size();
    switch (kind_) {
    case SpaceKind::Prefilter:
        for (std::size_t x = 0; x < n; ++x) {
            if (a.contains(x))
                continue;
            const auto& family = basis_.of(x);
            if (std::all_of(family.begin(), family.end(), [&](const ElementSet& b) { return b.intersects(a); }))
                result.insert(x);
        }
        break;
    case SpaceKind::Filter:
        for (std::size_t x = 0; x < n; ++x)
            if (!a.contains(x) && kernels_[x].intersects(a))
                result.insert(x);
        break;
    case SpaceKind::Graph:
        a.for_each([&](std::size_t x) {
            for (auto y : successors_[x])
                result.insert(y);
        });
        break;
    }
    return result;
}

ElementSet pseudoclosure(const PseudoclosureSpace& space, const ElementSet& a) { return space.apply(a); }

ElementSet closure(const PseudoclosureFn& fn, const ElementSet& a)
{
    ElementSet current = a;
    // Each non-final step strictly grows the set, so n + 1 applications
    // suffice for any operator satisfying A subset of a(A).
    for (std::size_t step = 0; step <= a.universe_size(); ++step) {
        ElementSet next = fn(current);
        if (next == current)
            return current;
        current = std::move(next);
    }
    throw ContractViolation("closure did not converge; operator is not extensive");
}

ElementSet closure(const PseudoclosureSpace& space, const ElementSet& a)
{
    check_member_of(space, a);
    ElementSet current = a;
    while (true) {
        ElementSet next = space.apply(current);
        if (next == current)
            return current;
        current = std::move(next);
    }
}

std::vector<ElementSet> closure_trace(const PseudoclosureSpace& space, const ElementSet& a)
{
    check_member_of(space, a);
    std::vector<ElementSet> trace{a};
    while (true) {
        ElementSet next = space.apply(trace.back());
        if (next == trace.back())
            return trace;
        trace.push_back(std::move(next));
    }
}

ElementSet interior(const PseudoclosureSpace& space, const ElementSet& a)
{
    check_member_of(space, a);
    return space.apply(a.complement()).complement();
}

std::vector<ElementSet> neighborhoods_of(const PseudoclosureSpace& space, std::size_t x)
{
    if (x >= space.size())
        throw ContractViolation("item index " + std::to_string(x) + " out of range");
    switch (space.kind()) {
    case SpaceKind::Prefilter: return space.basis().of(x);
    case SpaceKind::Filter:
    case SpaceKind::Graph: return {space.kernels()[x]};
    }
    return {};
}

namespace {

PseudoclosureFn as_fn(const PseudoclosureSpace& space)
{
    return [&space](const ElementSet& a) { return space.apply(a); };
}

// a(S) for every S, indexed by the bitmask of S.
std::vector<std::uint64_t> tabulate(const PseudoclosureFn& fn, std::size_t n)
{
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<std::uint64_t> table(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        auto image = fn(ElementSet::from_mask(n, mask));
        if (image.universe_size() != n)
            throw ContractViolation("pseudoclosure returned a set over a different universe");
        table[mask] = image.to_mask();
    }
    return table;
}

ElementSet random_subset(SplitMix64& rng, std::size_t n)
{
    // Density drawn per sample so both sparse and dense sets get exercised.
    const double p = rng.uniform();
    ElementSet s(n);
    for (std::size_t x = 0; x < n; ++x)
        if (rng.uniform() < p)
            s.insert(x);
    return s;
}

PropertyCheck fail(const ElementSet& a, const ElementSet& b, bool exhaustive)
{
    PropertyCheck r;
    r.holds = false;
    r.exhaustive = exhaustive;
    r.witness.emplace(a, b);
    return r;
}

} // namespace

PropertyCheck check_isotony(const PseudoclosureFn& fn, std::size_t n, CheckOptions options)
{
    if (n <= exhaustive_limit) {
        // Monotonicity on the covering pairs (S, S + y) implies it for every
        // nested pair by transitivity of inclusion.
        const auto table = tabulate(fn, n);
        for (std::uint64_t s = 0; s < table.size(); ++s)
            for (std::size_t y = 0; y < n; ++y) {
                const std::uint64_t t = s | (std::uint64_t{1} << y);
                if (t != s && (table[s] & ~table[t]))
                    return fail(ElementSet::from_mask(n, s), ElementSet::from_mask(n, t), true);
            }
        PropertyCheck ok;
        ok.exhaustive = true;
        return ok;
    }
    SplitMix64 rng(options.seed);
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        ElementSet a = random_subset(rng, n);
        ElementSet b = a | random_subset(rng, n);
        if (!fn(a).is_subset_of(fn(b)))
            return fail(a, b, false);
    }
    return {};
}

PropertyCheck check_isotony(const PseudoclosureSpace& space, CheckOptions options)
{
    return check_isotony(as_fn(space), space.size(), options);
}

PropertyCheck check_additivity(const PseudoclosureFn& fn, std::size_t n, CheckOptions options)
{
    if (n <= exhaustive_limit) {
        const auto table = tabulate(fn, n);
        for (std::uint64_t s = 0; s < table.size(); ++s)
            for (std::uint64_t t = s + 1; t < table.size(); ++t)
                if (table[s | t] != (table[s] | table[t]))
                    return fail(ElementSet::from_mask(n, s), ElementSet::from_mask(n, t), true);
        PropertyCheck ok;
        ok.exhaustive = true;
        return ok;
    }
    SplitMix64 rng(options.seed);
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        ElementSet a = random_subset(rng, n);
        ElementSet b = random_subset(rng, n);
        if (fn(a | b) != (fn(a) | fn(b)))
            return fail(a, b, false);
    }
    return {};
}

PropertyCheck check_additivity(const PseudoclosureSpace& space, CheckOptions options)
{
    return check_additivity(as_fn(space), space.size(), options);
}

namespace {

std::vector<std::vector<std::uint64_t>> minimal_neighborhood_masks(const std::vector<std::uint64_t>& table,
                                                                   std::size_t n)
{
    const std::uint64_t full = table.size() - 1;
    std::vector<std::vector<std::uint64_t>> result(n);
    for (std::size_t x = 0; x < n; ++x) {
        const std::uint64_t bit = std::uint64_t{1} << x;
        // V is a neighborhood of x iff x is in i(V), i.e. x not in a(V^c).
        auto is_neighborhood = [&](std::uint64_t v) { return (table[full & ~v] & bit) == 0; };
        for (std::uint64_t v = 0; v <= full; ++v) {
            if (!is_neighborhood(v))
                continue;
            bool minimal = true;
            for (std::uint64_t rest = v; rest && minimal; rest &= rest - 1) {
                const std::uint64_t low = rest & (~rest + 1);
                if (is_neighborhood(v & ~low))
                    minimal = false;
            }
            if (minimal)
                result[x].push_back(v);
        }
    }
    return result;
}

} // namespace

std::vector<std::vector<ElementSet>> derive_neighborhoods(const PseudoclosureFn& fn, std::size_t n)
{
    if (n > exhaustive_limit)
        throw ContractViolation("neighborhood derivation is exhaustive and limited to " +
                                std::to_string(exhaustive_limit) + " items");
    const auto masks = minimal_neighborhood_masks(tabulate(fn, n), n);
    std::vector<std::vector<ElementSet>> out(n);
    for (std::size_t x = 0; x < n; ++x)
        for (auto m : masks[x])
            out[x].push_back(ElementSet::from_mask(n, m));
    return out;
}

bool pseudoclosure_from_prefilter_roundtrip(const PseudoclosureFn& fn, std::size_t n)
{
    if (n > exhaustive_limit)
        throw ContractViolation("prefilter round-trip is exhaustive and limited to " +
                                std::to_string(exhaustive_limit) + " items");
    if (!check_isotony(fn, n))
        throw Unsupported("prefilter round-trip requires an isotone pseudoclosure");
    const auto table = tabulate(fn, n);
    const auto neighborhoods = minimal_neighborhood_masks(table, n);
    for (std::uint64_t a = 0; a < table.size(); ++a) {
        std::uint64_t rebuilt = 0;
        for (std::size_t x = 0; x < n; ++x) {
            const auto& family = neighborhoods[x];
            if (std::all_of(family.begin(), family.end(), [&](std::uint64_t v) { return (v & a) != 0; }))
                rebuilt |= std::uint64_t{1} << x;
        }
        if (rebuilt != table[a])
            return false;
    }
    return true;
}

bool pseudoclosure_from_prefilter_roundtrip(const PseudoclosureSpace& space)
{
    return pseudoclosure_from_prefilter_roundtrip(as_fn(space), space.size());
}

} // namespace pretopo
