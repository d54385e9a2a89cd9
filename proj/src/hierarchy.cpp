#include "pretopo/hierarchy.hpp"

#include "pretopo/errors.hpp"
#include "pretopo/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace pretopo {

Dissimilarity::Dissimilarity(DenseMatrix m) : matrix_(std::move(m))
{
    if (matrix_->rows() != matrix_->cols())
        throw ContractViolation("dissimilarity matrix must be square");
}

double Dissimilarity::operator()(std::size_t a, std::size_t b) const
{
    if (!matrix_)
        throw ConfigError("no ranking distance available");
    if (a >= matrix_->rows() || b >= matrix_->rows())
        throw ContractViolation("dissimilarity index out of range");
    return (*matrix_)(a, b);
}

ClosedFamily::ClosedFamily(std::vector<ElementSet> sets) : sets_(std::move(sets))
{
    std::sort(sets_.begin(), sets_.end(), CanonicalLess{});
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

std::optional<std::size_t> ClosedFamily::index_of(const ElementSet& s) const
{
    auto it = std::lower_bound(sets_.begin(), sets_.end(), s, CanonicalLess{});
    if (it != sets_.end() && *it == s)
        return static_cast<std::size_t>(it - sets_.begin());
    return std::nullopt;
}

std::vector<std::size_t> find_neighbors(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                        std::size_t first_node, std::size_t degree, const SeedFunction& seed_func)
{
    const auto n = space.size();
    if (first_node >= n)
        throw ContractViolation("first node " + std::to_string(first_node) + " out of range");
    if (seed_func.kind == SeedFunction::Kind::ClosestNode && !distance.available())
        throw ConfigError("ClosestNode needs a distance criterion");

    std::vector<std::size_t> path;
    if (degree == 0)
        return path;
    ElementSet visited(n);
    visited.insert(first_node);
    SplitMix64 rng(derive_seed(seed_func.rng_seed, first_node));

    std::size_t last = first_node;
    for (std::size_t step = 0; step < degree; ++step) {
        ElementSet single(n);
        single.insert(last);
        const ElementSet candidates = pseudoclosure(space, single) - visited;
        if (candidates.empty())
            break;
        std::size_t next = n;
        if (seed_func.kind == SeedFunction::Kind::ClosestNode) {
            double best = std::numeric_limits<double>::infinity();
            candidates.for_each([&](std::size_t y) {
                const double dist = distance(last, y);
                if (next == n || dist < best) {
                    best = dist;
                    next = y;
                }
            });
        } else {
            const auto members = candidates.members();
            next = members[static_cast<std::size_t>(rng.below(members.size()))];
        }
        path.push_back(next);
        visited.insert(next);
        last = next;
    }
    return path;
}

std::vector<Seed> elementary_quasiclosures(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                           std::size_t degree, const SeedFunction& seed_func)
{
    std::vector<Seed> seeds;
    seeds.reserve(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        Seed seed{x, ElementSet(space.size())};
        seed.members.insert(x);
        for (auto y : find_neighbors(space, distance, x, degree, seed_func))
            seed.members.insert(y);
        seeds.push_back(std::move(seed));
    }
    return seeds;
}

ClosedFamily elementary_closed_subsets(const PseudoclosureSpace& space, const std::vector<Seed>& seeds)
{
    const auto n = space.size();
    // buckets[k] holds the not-yet-expanded sets of cardinality k
    std::vector<std::vector<ElementSet>> buckets(n + 1);
    std::unordered_set<ElementSet> seen;
    auto record = [&](ElementSet s) {
        if (seen.insert(s).second)
            buckets[s.size()].push_back(std::move(s));
    };
    for (const auto& seed : seeds) {
        if (seed.members.universe_size() != n)
            throw ContractViolation("seed is over a different universe");
        record(seed.members);
    }
    for (std::size_t k = 0; k <= n; ++k) {
        // a(S) is never smaller than S, and equal size means a(S) = S,
        // so expansions only land in later buckets.
        for (std::size_t i = 0; i < buckets[k].size(); ++i) {
            ElementSet image = pseudoclosure(space, buckets[k][i]);
            if (image != buckets[k][i])
                record(std::move(image));
        }
    }
    return ClosedFamily(std::vector<ElementSet>(seen.begin(), seen.end()));
}

DenseMatrix extract_adjacency(const ClosedFamily& family)
{
    const auto m = family.size();
    DenseMatrix adj(m, m, 0.0);
    std::vector<double> sizes(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (family[i].empty())
            throw ContractViolation("adjacency: family contains the empty set");
        sizes[i] = static_cast<double>(family[i].size());
    }
    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g = f + 1; g < m; ++g) {
            const auto common = static_cast<double>(family[f].intersection_size(family[g]));
            if (common == 0.0)
                continue;
            const double f_has_g = common / sizes[g];
            const double g_has_f = common / sizes[f];
            const double f_bigger_g = sizes[f] / sizes[g];
            const double g_bigger_f = sizes[g] / sizes[f];
            adj(g, f) = g_bigger_f * g_has_f;
            adj(f, g) = f_bigger_g * f_has_g;
        }
    return adj;
}

namespace {

std::vector<std::size_t> roots_of(std::size_t count, const std::vector<ParentEdge>& edges,
                                  const std::vector<bool>& excluded)
{
    std::vector<bool> has_parent(count, false);
    for (const auto& e : edges)
        if (!excluded[e.parent])
            has_parent[e.child] = true;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < count; ++i)
        if (!excluded[i] && !has_parent[i])
            roots.push_back(i);
    return roots;
}

} // namespace

QuasiHierarchy extract_quasihierarchy(const ClosedFamily& family, const DenseMatrix& adjacency,
                                      const HierarchyOptions& options)
{
    const double th = options.threshold;
    if (!(th > 0.0 && th <= 1.0))
        throw ConfigError("th_qh must lie in (0, 1]");
    const auto m = family.size();
    if (adjacency.rows() != m || adjacency.cols() != m)
        throw ContractViolation("adjacency does not match the family");

    // Survivors are decided largest first; among equal sizes the lower
    // canonical index wins unless a random tie-break was requested.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint64_t> tie_key(m);
    if (options.tie_break == TieBreak::Random) {
        SplitMix64 rng(options.rng_seed);
        for (auto& k : tie_key)
            k = rng.next();
    } else {
        std::iota(tie_key.begin(), tie_key.end(), 0);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto sa = family[a].size();
        const auto sb = family[b].size();
        if (sa != sb)
            return sa > sb;
        if (tie_key[a] != tie_key[b])
            return tie_key[a] < tie_key[b];
        return a < b;
    });

    std::vector<bool> keep(m, false);
    std::vector<std::size_t> kept_so_far;
    std::size_t pruned = 0;
    for (auto i : order) {
        const bool equivalent = std::any_of(kept_so_far.begin(), kept_so_far.end(), [&](std::size_t k) {
            return adjacency(k, i) >= th && adjacency(i, k) >= th;
        });
        if (equivalent) {
            ++pruned;
        } else {
            keep[i] = true;
            kept_so_far.push_back(i);
        }
    }

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < m; ++i)
        if (keep[i])
            survivors.push_back(i);

    QuasiHierarchy qh;
    qh.threshold = th;
    qh.pruned = pruned;
    std::vector<ElementSet> sets;
    for (auto i : survivors)
        sets.push_back(family[i]);
    qh.universe_size = m ? family[0].universe_size() : 0;
    qh.family = ClosedFamily(std::move(sets));
    const auto s = survivors.size();
    qh.adjacency = DenseMatrix(s, s, 0.0);
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b)
            qh.adjacency(a, b) = adjacency(survivors[a], survivors[b]);

    for (std::size_t g = 0; g < s; ++g)
        for (std::size_t f = 0; f < s; ++f)
            if (qh.family[g].size() > qh.family[f].size() && qh.adjacency(g, f) >= th)
                qh.parent_edges.push_back({g, f, qh.adjacency(g, f)});

    qh.roots = roots_of(s, qh.parent_edges, std::vector<bool>(s, false));
    qh.coverage = ElementSet(qh.universe_size);
    for (const auto& set : qh.family)
        qh.coverage |= set;
    return qh;
}

QuasiHierarchy quasistructural_analysis(const PseudoclosureSpace& space, const Dissimilarity& distance,
                                        std::size_t degree, const SeedFunction& seed_func,
                                        const HierarchyOptions& options)
{
    const auto seeds = elementary_quasiclosures(space, distance, degree, seed_func);
    const auto family = elementary_closed_subsets(space, seeds);
    const auto adjacency = extract_adjacency(family);
    auto qh = extract_quasihierarchy(family, adjacency, options);
    qh.universe_size = space.size();
    if (qh.coverage.universe_size() != space.size())
        qh.coverage = ElementSet(space.size());
    return qh;
}

ClusteringResult flatten(const QuasiHierarchy& hierarchy)
{
    const auto n = hierarchy.universe_size;
    const auto& family = hierarchy.family;
    const auto m = family.size();

    std::vector<std::size_t> roots = hierarchy.roots;
    const auto universe_root =
        std::find_if(roots.begin(), roots.end(), [&](std::size_t r) { return n > 0 && family[r].size() == n; });
    if (universe_root != roots.end()) {
        // Drop the whole-universe set and take the maximal sets below it.
        std::vector<bool> excluded(m, false);
        excluded[*universe_root] = true;
        roots = roots_of(m, hierarchy.parent_edges, excluded);
    }

    ClusteringResult result;
    result.hierarchy = hierarchy;
    result.assignment.assign(n, std::nullopt);
    result.outliers = ElementSet(n);
    for (auto r : roots)
        if (family[r].size() >= 2)
            result.clusters.push_back(family[r]);

    // Clusters are in canonical order, so the first hit is the smallest
    // containing cluster with ties going to the lower index.
    for (std::size_t c = 0; c < result.clusters.size(); ++c)
        result.clusters[c].for_each([&](std::size_t x) {
            if (!result.assignment[x])
                result.assignment[x] = c;
        });
    for (std::size_t x = 0; x < n; ++x)
        if (!result.assignment[x])
            result.outliers.insert(x);
    return result;
}

} // namespace pretopo
