#pragma once

#include "pretopo/hierarchy.hpp"
#include "pretopo/similarity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pretopo {

/**
 * Everything a clustering run depends on. Parsed from a JSON document:
 *
 *   {"schema_version": 1,
 *    "dataset": {"features": "f.csv"}
 *             | {"tables": {"halfhour": "a.csv", "day": "b.csv"}}
 *             | {"generate": { ...generator spec... }},
 *    "criteria": [{"kind": "euclidean", "radius": 1.0},
 *                 {"kind": "size", "tolerance": 0.5},
 *                 {"kind": "pearson", "threshold": 0.8, "channel": "day"}],
 *    "mode": "prefilter" | "filter",
 *    "degree": 2,
 *    "seed_func": "closest" | "random",
 *    "th_qh": 0.5,
 *    "tie_break": "lowest_index" | "random",
 *    "rng_seed": 0,
 *    "output_dir": "out"}
 *
 * Relative paths resolve against the directory holding the config file.
 * With "tables", each file's series columns become the channel named by
 * its key.
 */
struct RunConfig {
    std::optional<std::string> features_path;
    std::map<std::string, std::string> tables;
    std::optional<std::string> generate_spec; // JSON text
    std::vector<Criterion> criteria;
    NeighborhoodMode mode = NeighborhoodMode::Prefilter;
    std::size_t degree = 2;
    SeedFunction::Kind seed_func = SeedFunction::Kind::ClosestNode;
    double th_qh = 0.5;
    TieBreak tie_break = TieBreak::LowestIndex;
    std::uint64_t rng_seed = 0;
    std::string output_dir = ".";
};

RunConfig parse_run_config(std::string_view json_text, const std::string& base_dir = ".");
RunConfig load_run_config(const std::string& path);

struct Dataset {
    FeatureTable table;
    std::optional<std::vector<std::int64_t>> labels; // generated datasets only
};

Dataset load_dataset(const RunConfig& config);

struct PipelineRun {
    PseudoclosureSpace space;
    ClusteringResult result;
};

// build_basis -> quasistructural_analysis -> flatten. ClosestNode ranks
// candidates by the first criterion's dissimilarity.
PipelineRun run_pipeline(const FeatureTable& table, const RunConfig& config);

} // namespace pretopo
