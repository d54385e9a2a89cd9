#include "pretopo/errors.hpp"
#include "pretopo/eval.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace pretopo;

namespace {

Partition from_ints(const std::vector<int>& labels)
{
    std::vector<std::int64_t> v(labels.begin(), labels.end());
    return Partition::from_indices(v);
}

std::vector<int> random_labels(SplitMix64& rng, std::size_t n)
{
    const auto k = 1 + rng.below(n);
    std::vector<int> v(n);
    for (auto& x : v)
        x = static_cast<int>(rng.below(k));
    return v;
}

} // namespace

TEST_CASE("ARI examples")
{
    CHECK(adjusted_rand_index(from_ints({0, 0, 1, 1}), from_ints({0, 0, 1, 1})) == 1.0);
    CHECK(adjusted_rand_index(from_ints({0, 0, 0, 0}), from_ints({0, 1, 2, 3})) == 0.0);
    const double v = adjusted_rand_index(from_ints({0, 0, 1, 1}), from_ints({0, 0, 1, 2}));
    CHECK(std::abs(v - 4.0 / 7.0) < 1e-12);
    CHECK(std::abs(v - testing::pair_counting_ari({0, 0, 1, 1}, {0, 0, 1, 2})) < 1e-12);
}

TEST_CASE("ARI on two items")
{
    const double a = adjusted_rand_index(from_ints({0, 1}), from_ints({0, 0}));
    CHECK(a == testing::pair_counting_ari({0, 1}, {0, 0}));
    CHECK(adjusted_rand_index(from_ints({0, 1}), from_ints({5, 7})) == 1.0);
}

TEST_CASE("ARI errors")
{
    CHECK_THROWS_AS((void)adjusted_rand_index(from_ints({0}), from_ints({0})), ConfigError);
    CHECK_THROWS_AS((void)adjusted_rand_index(from_ints({0, 1}), from_ints({0, 1, 2})), ConfigError);
    const Partition p({"a", "b"}, {"x", "y"});
    const Partition q({"a", "c"}, {"x", "y"});
    CHECK_THROWS_AS((void)adjusted_rand_index(p, q), ConfigError);
    CHECK_THROWS_AS(Partition({"a", "a"}, {"x", "y"}), ConfigError);
    CHECK_THROWS_AS(Partition({"a"}, {"x", "y"}), ConfigError);
}

TEST_CASE("items are matched by name, not position")
{
    const Partition p({"a", "b", "c", "d"}, {"1", "1", "2", "2"});
    const Partition q({"d", "c", "b", "a"}, {"u", "u", "v", "v"});
    CHECK(adjusted_rand_index(p, q) == 1.0);
}

TEST_CASE("ARI properties and oracle agreement")
{
    SplitMix64 rng(51);
    double max_diff = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(11);
        const auto a = random_labels(rng, n);
        const auto b = random_labels(rng, n);
        const auto pa = from_ints(a);
        const auto pb = from_ints(b);
        const double v = adjusted_rand_index(pa, pb);
        max_diff = std::max(max_diff, std::abs(v - testing::pair_counting_ari(a, b)));
        CHECK(v <= 1.0 + 1e-15);
        CHECK(adjusted_rand_index(pb, pa) == v);
        CHECK(adjusted_rand_index(pa, pa) == 1.0);

        // Relabel through a fixed permutation of label values.
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(i + 1)]);
        auto relabelled = a;
        for (auto& x : relabelled)
            x = perm[static_cast<std::size_t>(x)] + 100;
        CHECK(adjusted_rand_index(from_ints(relabelled), pb) == v);
    }
    CHECK(max_diff < 1e-12);
}

TEST_CASE("outliers form their own cluster")
{
    const auto found = Partition::from_assignment({0u, 0u, std::nullopt, std::nullopt});
    CHECK(found.labels() == std::vector<std::string>{"0", "0", "-1", "-1"});
    CHECK(adjusted_rand_index(from_ints({3, 3, 4, 4}), found) == 1.0);
}

TEST_CASE("confusion matrix")
{
    const auto truth = from_ints({0, 0, 1, 1, 1, 2});
    const auto found = Partition::from_indices({5, 5, 7, 7, 5, 9});
    const auto cm = confusion_matrix(truth, found);
    CHECK(cm.row_labels == std::vector<std::string>{"0", "1", "2"});
    CHECK(cm.col_labels == std::vector<std::string>{"5", "7", "9"});
    CHECK(cm.counts == std::vector<std::vector<std::size_t>>{{2, 0, 0}, {1, 2, 0}, {0, 0, 1}});

    const auto diag = confusion_matrix(truth, truth);
    for (std::size_t i = 0; i < diag.counts.size(); ++i)
        for (std::size_t j = 0; j < diag.counts.size(); ++j)
            CHECK((diag.counts[i][j] != 0) == (i == j));
    CHECK_THROWS_AS((void)confusion_matrix(truth, from_ints({0, 1})), ConfigError);
}

TEST_CASE("confusion row sums are class sizes")
{
    SplitMix64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        const auto a = random_labels(rng, n);
        const auto cm = confusion_matrix(from_ints(a), from_ints(random_labels(rng, n)));
        std::size_t total = 0;
        for (std::size_t r = 0; r < cm.row_labels.size(); ++r) {
            const auto sum = std::accumulate(cm.counts[r].begin(), cm.counts[r].end(), std::size_t{0});
            const auto label = std::stoi(cm.row_labels[r]);
            CHECK(sum == static_cast<std::size_t>(std::count(a.begin(), a.end(), label)));
            total += sum;
        }
        CHECK(total == n);
    }
}
