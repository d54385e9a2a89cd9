#include "pretopo/pipeline.hpp"

#include "pretopo/datagen.hpp"
#include "pretopo/errors.hpp"
#include "pretopo/rng.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pretopo {

using nlohmann::json;

namespace {

std::string resolve(const std::string& base, const std::string& path)
{
    std::filesystem::path p(path);
    if (p.is_absolute())
        return p.string();
    return (std::filesystem::path(base) / p).lexically_normal().string();
}

Criterion parse_criterion(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "euclidean")
        return Criterion::euclidean(j.at("radius").get<double>());
    if (kind == "size")
        return Criterion::size(j.at("tolerance").get<double>());
    if (kind == "pearson")
        return Criterion::pearson(j.at("threshold").get<double>(), j.value("channel", std::string(default_channel)));
    throw ConfigError("unknown criterion kind '" + kind + "'");
}

} // namespace

RunConfig parse_run_config(std::string_view text, const std::string& base_dir)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("run config: ") + e.what());
    }
    try {
        if (!doc.is_object())
            throw ConfigError("run config must be a JSON object");
        if (doc.value("schema_version", 1) != 1)
            throw ConfigError("unsupported run config schema_version");
        RunConfig cfg;
        cfg.rng_seed = doc.value("rng_seed", std::uint64_t{0});

        const auto& ds = doc.at("dataset");
        const int sources = ds.contains("features") + ds.contains("tables") + ds.contains("generate");
        if (sources != 1)
            throw ConfigError("dataset needs exactly one of 'features', 'tables', 'generate'");
        if (ds.contains("features"))
            cfg.features_path = resolve(base_dir, ds.at("features").get<std::string>());
        if (ds.contains("tables"))
            for (const auto& [channel, path] : ds.at("tables").items())
                cfg.tables[channel] = resolve(base_dir, path.get<std::string>());
        if (ds.contains("generate"))
            cfg.generate_spec = ds.at("generate").dump();

        for (const auto& c : doc.at("criteria"))
            cfg.criteria.push_back(parse_criterion(c));
        if (cfg.criteria.empty())
            throw ConfigError("at least one criterion is required");

        const auto mode = doc.value("mode", std::string("prefilter"));
        if (mode == "prefilter")
            cfg.mode = NeighborhoodMode::Prefilter;
        else if (mode == "filter")
            cfg.mode = NeighborhoodMode::Filter;
        else
            throw ConfigError("mode must be 'prefilter' or 'filter'");

        const auto degree = doc.value("degree", 2LL);
        if (degree < 0)
            throw ConfigError("degree must be >= 0");
        cfg.degree = static_cast<std::size_t>(degree);

        const auto seed_func = doc.value("seed_func", std::string("closest"));
        if (seed_func == "closest")
            cfg.seed_func = SeedFunction::Kind::ClosestNode;
        else if (seed_func == "random")
            cfg.seed_func = SeedFunction::Kind::RandomNeighbor;
        else
            throw ConfigError("seed_func must be 'closest' or 'random'");

        cfg.th_qh = doc.value("th_qh", 0.5);
        if (!(cfg.th_qh > 0.0 && cfg.th_qh <= 1.0))
            throw ConfigError("th_qh must lie in (0, 1]");

        const auto tie = doc.value("tie_break", std::string("lowest_index"));
        if (tie == "lowest_index")
            cfg.tie_break = TieBreak::LowestIndex;
        else if (tie == "random")
            cfg.tie_break = TieBreak::Random;
        else
            throw ConfigError("tie_break must be 'lowest_index' or 'random'");

        cfg.output_dir = resolve(base_dir, doc.value("output_dir", std::string(".")));
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("run config: ") + e.what());
    }
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto base = std::filesystem::path(path).parent_path().string();
    return parse_run_config(ss.str(), base.empty() ? "." : base);
}

Dataset load_dataset(const RunConfig& config)
{
    Dataset ds;
    if (config.features_path) {
        ds.table = read_feature_csv_file(*config.features_path);
        return ds;
    }
    if (!config.tables.empty()) {
        std::optional<FeatureTable> merged;
        for (const auto& [channel, path] : config.tables) {
            auto t = read_feature_csv_file(path);
            if (!t.has_series())
                throw ConfigError("table '" + path + "' has no series columns");
            if (!merged)
                merged.emplace(t.ids());
            else if (merged->ids() != t.ids())
                throw ConfigError("table '" + path + "' lists different items than the other tables");
            merged->set_series(t.series(), channel);
        }
        ds.table = std::move(*merged);
        return ds;
    }
    const auto spec = parse_generator_spec(*config.generate_spec, config.rng_seed);
    if (const auto* p = std::get_if<PointGenSpec>(&spec)) {
        auto gen = generate_points(*p);
        ds.table = std::move(gen.table);
        ds.labels = std::move(gen.labels);
    } else if (const auto* s = std::get_if<SeriesGenSpec>(&spec)) {
        auto gen = generate_series(*s);
        ds.table = std::move(gen.table);
        ds.labels = std::move(gen.labels);
    } else {
        throw ConfigError("cluster runs cannot generate raw site data; run 'ingest' first");
    }
    return ds;
}

PipelineRun run_pipeline(const FeatureTable& table, const RunConfig& config)
{
    PipelineRun run;
    if (table.size() == 0) {
        run.space = PseudoclosureSpace::graph(Universe(0), {});
        run.result = flatten(extract_quasihierarchy(ClosedFamily{}, DenseMatrix(0, 0, 0.0), {config.th_qh}));
        return run;
    }
    run.space = build_basis(table, config.criteria, config.mode);
    Dissimilarity distance(dissimilarity_matrix(table, config.criteria.front()));
    SeedFunction seed_func{config.seed_func, derive_seed(config.rng_seed, 1)};
    HierarchyOptions options{config.th_qh, config.tie_break, derive_seed(config.rng_seed, 2)};
    auto qh = quasistructural_analysis(run.space, distance, config.degree, seed_func, options);
    run.result = flatten(qh);
    return run;
}

} // namespace pretopo
