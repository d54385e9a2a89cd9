#include "pretopo/errors.hpp"
#include "pretopo/space_json.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace pretopo;

namespace {

bool same_operator(const PseudoclosureSpace& a, const PseudoclosureSpace& b)
{
    if (a.size() != b.size() || a.kind() != b.kind())
        return false;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.size()); ++m) {
        const auto s = ElementSet::from_mask(a.size(), m);
        if (pseudoclosure(a, s) != pseudoclosure(b, s))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("round trip for every kind")
{
    SplitMix64 rng(21);
    for (int kind = 0; kind < 3; ++kind) {
        const auto s = testing::random_space(7, kind, rng);
        const auto text = write_space_json(s);
        const auto back = read_space_json(text);
        CHECK(same_operator(s, back));
        CHECK(write_space_json(back) == text);
    }
}

TEST_CASE("labels survive")
{
    const auto g = PseudoclosureSpace::graph(Universe(std::vector<std::string>{"a", "b", "c"}), {{0, 2}});
    const auto back = read_space_json(write_space_json(g));
    CHECK(back.universe().labels() == std::vector<std::string>{"a", "b", "c"});
    CHECK(back.edges() == g.edges());
}

TEST_CASE("hand-written documents")
{
    const auto s = read_space_json(R"({"universe": 3, "kind": "graph", "edges": [[0, 1], [1, 2]]})");
    CHECK(closure(s, ElementSet(3, {0})) == ElementSet::full(3));
    const auto p = read_space_json(R"({"universe": 2, "kind": "prefilter", "bases": [[[0, 1]], [[1]]]})");
    CHECK(pseudoclosure(p, ElementSet(2, {1})) == ElementSet::full(2));
}

TEST_CASE("malformed documents")
{
    CHECK_THROWS_AS(read_space_json("{"), ParseError);
    CHECK_THROWS_AS(read_space_json(R"({"universe": 2, "kind": "tree", "edges": []})"), ConfigError);
    CHECK_THROWS_AS(read_space_json(R"({"universe": 2, "kind": "graph", "edges": [[0, 5]]})"), ConfigError);
    CHECK_THROWS_AS(read_space_json(R"({"universe": 2, "kind": "prefilter", "bases": [[[1]], [[1]]]})"),
                    ConfigError);
    CHECK_THROWS_AS(read_space_json(R"({"schema_version": 9, "universe": 1, "kind": "graph", "edges": []})"),
                    ConfigError);
}
