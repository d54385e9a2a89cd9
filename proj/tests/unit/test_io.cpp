#include "pretopo/errors.hpp"
#include "pretopo/eval.hpp"
#include "pretopo/hierarchy_io.hpp"
#include "pretopo/pipeline.hpp"
#include "pretopo/render.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <regex>
#include <set>
#include <sstream>

using namespace pretopo;

namespace {

QuasiHierarchy chain_hierarchy()
{
    // {0,1,2,3} contains {0,1,2}, which contains {0,1}; {4} stands apart.
    const ClosedFamily fam({ElementSet(6, {0, 1}), ElementSet(6, {0, 1, 2}), ElementSet(6, {0, 1, 2, 3}),
                            ElementSet(6, {4})});
    return extract_quasihierarchy(fam, extract_adjacency(fam), {1.0});
}

std::size_t count_matches(const std::string& text, const std::string& pattern)
{
    const std::regex re(pattern);
    return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                                  std::sregex_iterator()));
}

std::set<std::string> fills(const std::string& svg)
{
    std::set<std::string> out;
    const std::regex re("<circle[^>]*fill=\"(#[0-9a-f]{6})\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
        out.insert((*it)[1]);
    return out;
}

} // namespace

TEST_CASE("hierarchy JSON round trip")
{
    SplitMix64 rng(61);
    const auto space = testing::random_space(10, 0, rng);
    const auto qh = quasistructural_analysis(space, {}, 2, SeedFunction::random(1), {0.5});
    std::vector<std::string> items;
    for (int i = 0; i < 10; ++i)
        items.push_back("item" + std::to_string(i));
    const auto text = write_hierarchy_json(qh, items);
    const auto doc = read_hierarchy_json(text);
    CHECK(doc.items == items);
    CHECK(doc.hierarchy.family.sets() == qh.family.sets());
    CHECK(doc.hierarchy.parent_edges == qh.parent_edges);
    CHECK(doc.hierarchy.roots == qh.roots);
    CHECK(doc.hierarchy.adjacency == qh.adjacency);
    CHECK(write_hierarchy_json(doc.hierarchy, doc.items) == text);
}

TEST_CASE("hierarchy JSON validation")
{
    CHECK_THROWS_AS(read_hierarchy_json("not json"), ParseError);
    CHECK_THROWS_AS(read_hierarchy_json(R"({"schema_version": 2})"), ConfigError);
    CHECK_THROWS_AS(
        read_hierarchy_json(
            R"({"items": ["a", "b"], "threshold": 0.5, "sets": [{"id": 0, "size": 1, "members": [5]}], "edges": [], "roots": [0]})"),
        ConfigError);
}

TEST_CASE("hierarchy DOT")
{
    const auto qh = chain_hierarchy();
    const auto dot = write_hierarchy_dot(qh);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(count_matches(dot, "\\[label=\"\\d+ \\(\\d+\\)\"\\]") == qh.family.size());
    CHECK(count_matches(dot, "->") == qh.parent_edges.size());
}

TEST_CASE("tree rendering shows only sets above two members")
{
    const auto qh = chain_hierarchy();
    const auto dot = render_tree_dot(qh);
    // Only {0,1,2} and {0,1,2,3} are shown, joined by one edge.
    CHECK(count_matches(dot, "label=") == 2);
    CHECK(count_matches(dot, "->") == 1);
    const auto all = render_tree_dot(qh, 0);
    CHECK(count_matches(all, "label=") == 4);
    // The edge {0,1,2,3} -> {0,1} is implied through {0,1,2}.
    CHECK(count_matches(all, "->") == 2);
}

TEST_CASE("assignment CSV")
{
    const auto qh = chain_hierarchy();
    const auto res = flatten(qh);
    std::ostringstream os;
    write_assignment_csv(os, res, {"a", "b", "c", "d", "e", "f"});
    CHECK(os.str() == "item_id,cluster_id\na,0\nb,0\nc,0\nd,0\ne,-1\nf,-1\n");
    std::istringstream in(os.str());
    const auto p = read_partition_csv(in);
    CHECK(p.items().size() == 6);
    CHECK(p.labels()[4] == "-1");
    std::istringstream bad("item_id\na\n");
    CHECK_THROWS_AS(read_partition_csv(bad), ParseError);
    std::istringstream dup("item_id,label\na,1\na,2\n");
    CHECK_THROWS_AS(read_partition_csv(dup), ParseError);
}

TEST_CASE("scatter SVG colours clusters and blackens outliers")
{
    FeatureTable t(std::vector<std::string>{"a", "b", "c", "d", "e"});
    t.set_positions({{0, 0}, {1, 0}, {5, 5}, {6, 5}, {9, 9}});
    t.set_sizes({1, 2, 3, 4, 5});
    const Partition p({"a", "b", "c", "d", "e"}, {"0", "0", "1", "1", "-1"});
    const auto svg = render_scatter_svg(t, p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count_matches(svg, "<circle") == 5);
    const auto colours = fills(svg);
    CHECK(colours.size() == 3);
    CHECK(colours.count("#000000") == 1);

    FeatureTable no_pos(std::vector<std::string>{"a"});
    CHECK_THROWS_AS((void)render_scatter_svg(no_pos, Partition({"a"}, {"0"})), ConfigError);
}

TEST_CASE("series SVG draws one polyline per item")
{
    FeatureTable t(std::vector<std::string>{"a", "b"});
    t.set_series({{1, 2, 3}, {3, 2, 1}});
    const auto svg = render_series_svg(t, Partition({"a", "b"}, {"0", "1"}));
    CHECK(count_matches(svg, "<polyline") == 2);
}

TEST_CASE("run config parsing")
{
    const auto cfg = parse_run_config(R"({"schema_version": 1, "dataset": {"features": "data/f.csv"},
        "criteria": [{"kind": "euclidean", "radius": 1.5}, {"kind": "size", "tolerance": 0.2}],
        "mode": "filter", "degree": 3, "seed_func": "random", "th_qh": 0.7, "tie_break": "random",
        "rng_seed": 42, "output_dir": "out"})",
                                      "/base");
    CHECK(cfg.features_path == "/base/data/f.csv");
    CHECK(cfg.criteria.size() == 2);
    CHECK(cfg.criteria[1].kind == Criterion::Kind::SizeBall);
    CHECK(cfg.mode == NeighborhoodMode::Filter);
    CHECK(cfg.degree == 3);
    CHECK(cfg.seed_func == SeedFunction::Kind::RandomNeighbor);
    CHECK(cfg.th_qh == 0.7);
    CHECK(cfg.tie_break == TieBreak::Random);
    CHECK(cfg.rng_seed == 42);
    CHECK(cfg.output_dir == "/base/out");

    const auto tables = parse_run_config(
        R"({"dataset": {"tables": {"day": "/abs/d.csv"}}, "criteria": [{"kind": "pearson", "threshold": 0.8, "channel": "day"}]})");
    CHECK(tables.tables.at("day") == "/abs/d.csv");
    CHECK(tables.criteria[0].channel == "day");
    CHECK(tables.degree == 2);
    CHECK(tables.th_qh == 0.5);
}

TEST_CASE("run config errors")
{
    const auto bad = [](const std::string& text) { CHECK_THROWS_AS((void)parse_run_config(text), ConfigError); };
    bad("{");
    bad(R"({"criteria": [{"kind": "size", "tolerance": 1}]})");
    bad(R"({"dataset": {"features": "a", "tables": {}}, "criteria": [{"kind": "size", "tolerance": 1}]})");
    bad(R"({"dataset": {"features": "a"}, "criteria": []})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "cosine"}]})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "euclidean", "radius": -1}]})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "size", "tolerance": 1}], "th_qh": 0})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "size", "tolerance": 1}], "mode": "both"})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "size", "tolerance": 1}], "degree": -1})");
    bad(R"({"dataset": {"features": "a"}, "criteria": [{"kind": "size", "tolerance": 1}], "seed_func": "x"})");
    bad(R"({"schema_version": 2, "dataset": {"features": "a"}, "criteria": [{"kind": "size", "tolerance": 1}]})");
    CHECK_THROWS_AS((void)load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("generated dataset runs through the pipeline")
{
    const auto cfg = parse_run_config(R"({"dataset": {"generate": {"kind": "points", "groups": [
        {"count": 8, "center": [0, 0], "dispersion": 0.2, "size_range": [1, 1]},
        {"count": 8, "center": [20, 0], "dispersion": 0.2, "size_range": [1, 1]}]}},
        "criteria": [{"kind": "euclidean", "radius": 2.0}], "rng_seed": 3})");
    const auto ds = load_dataset(cfg);
    REQUIRE(ds.labels);
    const auto run = run_pipeline(ds.table, cfg);
    CHECK(run.result.clusters.size() == 2);
    CHECK(adjusted_rand_index(Partition::from_indices(*ds.labels), Partition::from_assignment(run.result.assignment)) ==
          1.0);

    const auto sites = parse_run_config(
        R"({"dataset": {"generate": {"kind": "sites"}}, "criteria": [{"kind": "pearson", "threshold": 0.5}]})");
    CHECK_THROWS_AS((void)load_dataset(sites), ConfigError);
}

TEST_CASE("empty table gives an empty result")
{
    const auto cfg = parse_run_config(R"({"dataset": {"features": "x"}, "criteria": [{"kind": "euclidean", "radius": 1}]})");
    const auto run = run_pipeline(FeatureTable(std::vector<std::string>{}), cfg);
    CHECK(run.result.clusters.empty());
    CHECK(run.result.assignment.empty());
}
