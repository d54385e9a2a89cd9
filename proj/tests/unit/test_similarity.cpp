#include "pretopo/errors.hpp"
#include "pretopo/similarity.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pretopo;

namespace {

FeatureTable points(const std::vector<std::vector<double>>& xy, const std::vector<double>& sizes)
{
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < xy.size(); ++i)
        ids.push_back("p" + std::to_string(i));
    FeatureTable t(ids);
    t.set_positions(xy);
    if (!sizes.empty())
        t.set_sizes(sizes);
    return t;
}

FeatureTable random_series_table(SplitMix64& rng, std::size_t n, std::size_t len)
{
    std::vector<std::string> ids;
    std::vector<std::vector<double>> series;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
        std::vector<double> s(len);
        for (auto& v : s)
            v = rng.normal();
        series.push_back(s);
    }
    FeatureTable t(ids);
    t.set_series(series);
    return t;
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

} // namespace

TEST_CASE("pearson examples")
{
    const std::vector<double> a{1, 2, 3}, b{2, 4, 6}, c{3, 2, 1}, flat{5, 5, 5};
    CHECK(pearson(a, b) == 1.0);
    CHECK(pearson(a, c) == -1.0);
    CHECK_THROWS_AS((void)pearson(flat, a), DegenerateSeries);
    CHECK_THROWS_AS((void)pearson(std::vector<double>{1, 2}, a), ContractViolation);
    CHECK_THROWS_AS((void)pearson(std::vector<double>{1}, std::vector<double>{2}), ContractViolation);
}

TEST_CASE("pearson agrees with the raw-moment formula and is affine invariant")
{
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 2 + rng.below(40);
        std::vector<double> x(len), y(len), z(len);
        for (std::size_t i = 0; i < len; ++i) {
            x[i] = rng.normal();
            y[i] = 0.5 * x[i] + rng.normal();
        }
        const double a = 0.1 + 10.0 * rng.uniform();
        const double b = rng.uniform(-5.0, 5.0);
        for (std::size_t i = 0; i < len; ++i)
            z[i] = a * x[i] + b;
        const double r = pearson(x, y);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        CHECK(r == doctest::Approx(naive_pearson(x, y)).epsilon(1e-9));
        CHECK(std::abs(pearson(z, y) - r) < 1e-12);
        CHECK(pearson(x, y) == pearson(y, x));
    }
}

TEST_CASE("criterion validation")
{
    CHECK_THROWS_AS(Criterion::euclidean(0.0), ConfigError);
    CHECK_THROWS_AS(Criterion::size(-1.0), ConfigError);
    CHECK_NOTHROW(Criterion::size(0.0));
    CHECK_THROWS_AS(Criterion::pearson(-1.0), ConfigError);
    CHECK_THROWS_AS(Criterion::pearson(1.5), ConfigError);
    CHECK_NOTHROW(Criterion::pearson(1.0));
}

TEST_CASE("pairwise matrices")
{
    const auto line = points({{0, 0}, {3, 0}, {4, 0}}, {});
    const auto d = pairwise_matrix(line, Criterion::euclidean(1.0));
    const double expected[3][3] = {{0, 3, 4}, {3, 0, 1}, {4, 1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(d(i, j) == expected[i][j]);

    const auto single = points({{1, 1}}, {});
    CHECK(pairwise_matrix(single, Criterion::euclidean(1.0))(0, 0) == 0.0);

    FeatureTable one(std::vector<std::string>{"a"});
    one.set_series({{1, 2, 3}});
    CHECK(pairwise_matrix(one, Criterion::pearson(0.5))(0, 0) == 1.0);

    FeatureTable twins(std::vector<std::string>{"a", "b"});
    twins.set_series({{1, 3, 2}, {1, 3, 2}});
    const auto c = pairwise_matrix(twins, Criterion::pearson(0.5));
    CHECK(c(0, 1) == 1.0);
    CHECK(dissimilarity_matrix(twins, Criterion::pearson(0.5))(0, 1) == 0.0);
}

TEST_CASE("degenerate series name the item")
{
    FeatureTable t(std::vector<std::string>{"a", "b", "c"});
    t.set_series({{1, 2, 3}, {4, 5, 7}, {2, 2, 2}});
    try {
        (void)pairwise_matrix(t, Criterion::pearson(0.5));
        FAIL("expected DegenerateSeries");
    } catch (const DegenerateSeries& e) {
        CHECK(e.item() == 2);
    }
}

TEST_CASE("missing features")
{
    const auto t = points({{0, 0}, {1, 1}}, {});
    CHECK_THROWS_AS((void)build_basis(t, {Criterion::size(1.0)}), ConfigError);
    CHECK_THROWS_AS((void)build_basis(t, {Criterion::pearson(0.5)}), ConfigError);
    CHECK_THROWS_AS((void)build_basis(t, {}), ConfigError);
}

TEST_CASE("euclidean basis example")
{
    const double eps = 2.0;
    const auto t = points({{0, 0}, {0, eps / 2}, {0, 10 * eps}}, {});
    const auto s = build_basis(t, {Criterion::euclidean(eps)});
    REQUIRE(s.basis().of(0).size() == 1);
    CHECK(s.basis().of(0)[0] == ElementSet(3, {0, 1}));
    CHECK(s.basis().of(2)[0] == ElementSet(3, {2}));
    CHECK(s.universe().label(2) == "p2");
}

TEST_CASE("closed inequalities at the boundary")
{
    const auto t = points({{0, 0}, {0, 1}}, {1.0, 1.5});
    CHECK(build_basis(t, {Criterion::euclidean(1.0)}).basis().of(0)[0] == ElementSet(2, {0, 1}));
    CHECK(build_basis(t, {Criterion::size(0.5)}).basis().of(0)[0] == ElementSet(2, {0, 1}));
}

TEST_CASE("prefilter and filter semantics with two criteria")
{
    // Item 0 sees item 1 by position and item 2 by size, never both through one witness.
    const auto t = points({{0, 0}, {1, 0}, {0, 50}}, {1.0, 9.0, 1.2});
    const std::vector<Criterion> criteria{Criterion::euclidean(1.5), Criterion::size(0.5)};
    const auto pre = build_basis(t, criteria, NeighborhoodMode::Prefilter);
    const auto fil = build_basis(t, criteria, NeighborhoodMode::Filter);
    const ElementSet a(3, {1, 2});
    CHECK(pseudoclosure(pre, a).contains(0));
    CHECK_FALSE(pseudoclosure(fil, a).contains(0));
    CHECK_FALSE(pseudoclosure(pre, ElementSet(3, {1})).contains(0));
    CHECK(pre.kind() == SpaceKind::Prefilter);
    CHECK(fil.kind() == SpaceKind::Filter);
}

TEST_CASE("balls are reflexive, symmetric and monotone in the threshold")
{
    SplitMix64 rng(32);
    const auto t = random_series_table(rng, 25, 12);
    std::vector<ElementSet> previous;
    for (double rho : {0.9, 0.6, 0.3, 0.0, -0.5}) {
        const auto s = build_basis(t, {Criterion::pearson(rho)});
        for (std::size_t x = 0; x < t.size(); ++x) {
            const auto& b = s.basis().of(x)[0];
            CHECK(b.contains(x));
            for (std::size_t y = 0; y < t.size(); ++y)
                CHECK(b.contains(y) == s.basis().of(y)[0].contains(x));
            if (!previous.empty())
                CHECK(previous[x].is_subset_of(b));
        }
        previous.clear();
        for (std::size_t x = 0; x < t.size(); ++x)
            previous.push_back(s.basis().of(x)[0]);
    }
}

TEST_CASE("pseudoclosures grow with the radius")
{
    SplitMix64 rng(33);
    std::vector<std::vector<double>> xy;
    for (int i = 0; i < 30; ++i)
        xy.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    const auto t = points(xy, {});
    const auto small = build_basis(t, {Criterion::euclidean(1.0)});
    const auto large = build_basis(t, {Criterion::euclidean(2.0)});
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_subset(30, rng, 0.1);
        CHECK(pseudoclosure(small, a).is_subset_of(pseudoclosure(large, a)));
    }
}

TEST_CASE("feature CSV round trip")
{
    FeatureTable t(std::vector<std::string>{"a", "b"});
    t.set_positions({{0.1, -2.5}, {3, 4}});
    t.set_sizes({1.5, 0});
    t.set_series({{1, 2, 3}, {0.25, 1e-7, -3}});
    std::ostringstream os;
    write_feature_csv(os, t);
    CHECK(os.str().rfind("item_id,x,y,size,series_0,series_1,series_2\n", 0) == 0);
    std::istringstream is(os.str());
    const auto back = read_feature_csv(is);
    CHECK(back.ids() == t.ids());
    CHECK(back.positions() == t.positions());
    CHECK(back.sizes() == t.sizes());
    CHECK(back.series() == t.series());
}

TEST_CASE("feature CSV errors carry line numbers")
{
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return read_feature_csv(is);
    };
    CHECK_THROWS_AS(parse("x,y\n1,2\n"), ParseError);
    CHECK_THROWS_AS(parse("item_id,x\na,1\n"), ParseError);
    CHECK_THROWS_AS(parse("item_id,series_0,series_2\na,1,2\n"), ParseError);
    CHECK_THROWS_AS(parse("item_id,bogus\na,1\n"), ParseError);
    try {
        parse("item_id,size\na,1\nb,oops\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("item_id,size\na,-1\n"), ParseError);
    CHECK_THROWS_AS(parse("item_id,size\na,1\na,2\n"), ParseError);
}
