#include "pretopo/cli.hpp"

#include "pretopo/datagen.hpp"
#include "pretopo/errors.hpp"
#include "pretopo/eval.hpp"
#include "pretopo/hierarchy_io.hpp"
#include "pretopo/ingest.hpp"
#include "pretopo/pipeline.hpp"
#include "pretopo/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pretopo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

template <class F>
std::string to_text(F&& writer)
{
    std::ostringstream os;
    writer(os);
    return os.str();
}

int cmd_generate(const std::string& spec_path, const std::string& out_dir, std::ostream& out)
{
    const auto spec = parse_generator_spec(read_file(spec_path));
    const fs::path dir(out_dir);
    json summary;
    if (const auto* sites = std::get_if<SiteGenSpec>(&spec)) {
        const auto gen = generate_sites(*sites);
        std::vector<std::string> ids;
        for (const auto& s : gen.sites)
            ids.push_back(s.site_id);
        write_file(dir / "consumption.csv", to_text([&](std::ostream& os) { write_consumption_csv(os, gen.sites); }));
        write_file(dir / "labels.csv", to_text([&](std::ostream& os) { write_labels_csv(os, ids, gen.labels); }));
        summary = {{"kind", "sites"}, {"items", ids.size()}, {"files", {"consumption.csv", "labels.csv"}}};
    } else {
        const auto gen = std::holds_alternative<PointGenSpec>(spec) ? generate_points(std::get<PointGenSpec>(spec))
                                                                     : generate_series(std::get<SeriesGenSpec>(spec));
        write_file(dir / "features.csv", to_text([&](std::ostream& os) { write_feature_csv(os, gen.table); }));
        write_file(dir / "labels.csv",
                   to_text([&](std::ostream& os) { write_labels_csv(os, gen.table.ids(), gen.labels); }));
        summary = {{"kind", std::holds_alternative<PointGenSpec>(spec) ? "points" : "series"},
                   {"items", gen.table.size()},
                   {"files", {"features.csv", "labels.csv"}}};
    }
    out << summary.dump() << '\n';
    return exit_ok;
}

int cmd_cluster(const std::string& config_path, std::ostream& out)
{
    const auto config = load_run_config(config_path);
    const auto dataset = load_dataset(config);
    const auto run = run_pipeline(dataset.table, config);
    const auto& result = run.result;
    const auto& ids = dataset.table.ids();
    const fs::path dir(config.output_dir);
    write_file(dir / "assignment.csv", to_text([&](std::ostream& os) { write_assignment_csv(os, result, ids); }));
    write_file(dir / "hierarchy.json", write_hierarchy_json(result.hierarchy, ids));
    write_file(dir / "hierarchy.dot", write_hierarchy_dot(result.hierarchy));
    if (dataset.labels)
        write_file(dir / "labels.csv",
                   to_text([&](std::ostream& os) { write_labels_csv(os, ids, *dataset.labels); }));

    json summary = {{"items", dataset.table.size()},
                    {"clusters", result.clusters.size()},
                    {"outliers", result.outliers.size()},
                    {"sets", result.hierarchy.family.size()},
                    {"roots", result.hierarchy.roots.size()},
                    {"pruned_equivalents", result.hierarchy.pruned}};
    if (dataset.labels && dataset.table.size() >= 2)
        summary["ari"] = adjusted_rand_index(Partition::from_indices(*dataset.labels),
                                             Partition::from_assignment(result.assignment));
    out << summary.dump() << '\n';
    return exit_ok;
}

int cmd_eval(const std::string& assignment_path, const std::string& labels_path, std::ostream& out)
{
    const auto found = read_partition_csv_file(assignment_path);
    const auto truth = read_partition_csv_file(labels_path);
    const double ari = adjusted_rand_index(truth, found);
    const auto cm = confusion_matrix(truth, found);
    json summary = {{"items", truth.size()},
                    {"ari", ari},
                    {"confusion", {{"rows", cm.row_labels}, {"cols", cm.col_labels}, {"counts", cm.counts}}}};
    out << summary.dump() << '\n';
    return exit_ok;
}

int cmd_render(const std::string& hierarchy_path, const std::string& assignment_path, const std::string& features_path,
               const std::string& out_path, std::ostream& out)
{
    std::string content;
    if (!hierarchy_path.empty()) {
        if (!assignment_path.empty() || !features_path.empty())
            throw ConfigError("render takes either --hierarchy or --assignment with --features");
        content = render_tree_dot(read_hierarchy_json(read_file(hierarchy_path)).hierarchy);
    } else {
        if (assignment_path.empty() || features_path.empty())
            throw ConfigError("render needs --hierarchy, or --assignment together with --features");
        const auto table = read_feature_csv_file(features_path);
        const auto assignment = read_partition_csv_file(assignment_path);
        content = table.has_positions() ? render_scatter_svg(table, assignment) : render_series_svg(table, assignment);
    }
    if (out_path.empty() || out_path == "-")
        out << content;
    else
        write_file(out_path, content);
    return exit_ok;
}

int cmd_ingest(const std::string& input, const std::string& out_dir, const std::string& aggregate,
               const std::vector<std::string>& resolution_names, std::ostream& out)
{
    Aggregate agg;
    if (aggregate == "mean")
        agg = Aggregate::Mean;
    else if (aggregate == "sum")
        agg = Aggregate::Sum;
    else
        throw ConfigError("aggregate must be 'mean' or 'sum'");
    std::vector<Resolution> resolutions;
    for (const auto& name : resolution_names)
        resolutions.push_back(parse_resolution(name));
    if (resolutions.empty())
        resolutions = all_resolutions;

    const auto sites = load_csv_file(input);
    const auto table = resample_table(sites, resolutions, agg);
    const auto features = table.to_feature_table();
    const fs::path dir(out_dir);
    json files = json::array();
    json lengths = json::object();
    for (const auto& [r, rows] : table.series) {
        const std::string name = std::string("features_") + to_string(r) + ".csv";
        FeatureTable single(features.ids());
        if (!rows.empty())
            single.set_series(rows);
        write_file(dir / name, to_text([&](std::ostream& os) { write_feature_csv(os, single); }));
        files.push_back(name);
        lengths[to_string(r)] = rows.empty() ? 0 : rows.front().size();
    }
    json report = {{"sites_read", sites.size()},
                   {"sites_kept", table.site_ids.size()},
                   {"window", {{"start", table.window.start}, {"end", table.window.end}}},
                   {"lengths", lengths},
                   {"files", files},
                   {"warnings", table.warnings}};
    out << report.dump() << '\n';
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pretopological multi-criteria hierarchical clustering"};
    app.require_subcommand(1);

    std::string spec_path, out_dir, config_path, assignment_path, labels_path, hierarchy_path, features_path,
        out_path, input_path, aggregate = "mean";
    std::vector<std::string> resolutions;

    auto* generate = app.add_subcommand("generate", "Write a synthetic dataset and its ground-truth labels");
    generate->add_option("--spec", spec_path, "Generator spec (JSON)")->required();
    generate->add_option("--out", out_dir, "Output directory")->required();

    auto* cluster = app.add_subcommand("cluster", "Run the clustering pipeline described by a config file");
    cluster->add_option("--config", config_path, "Run config (JSON)")->required();

    auto* eval = app.add_subcommand("eval", "Compare an assignment against ground truth");
    eval->add_option("--assignment", assignment_path, "Assignment CSV")->required();
    eval->add_option("--labels", labels_path, "Ground-truth labels CSV")->required();

    auto* render = app.add_subcommand("render", "Draw the hierarchy tree (DOT) or the clusters (SVG)");
    render->add_option("--hierarchy", hierarchy_path, "Hierarchy JSON");
    render->add_option("--assignment", assignment_path, "Assignment CSV");
    render->add_option("--features", features_path, "Feature CSV");
    render->add_option("--out", out_path, "Output file; stdout when omitted");

    auto* ingest = app.add_subcommand("ingest", "Resample consumption CSV into per-resolution feature tables");
    ingest->add_option("--input", input_path, "Consumption CSV (site_id,timestamp,value)")->required();
    ingest->add_option("--out", out_dir, "Output directory")->required();
    ingest->add_option("--aggregate", aggregate, "Bucket aggregate: mean or sum");
    ingest->add_option("--resolutions", resolutions, "Subset of halfhour,day,week,month")->delimiter(',');

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_config;
    }

    try {
        if (generate->parsed())
            return cmd_generate(spec_path, out_dir, out);
        if (cluster->parsed())
            return cmd_cluster(config_path, out);
        if (eval->parsed())
            return cmd_eval(assignment_path, labels_path, out);
        if (render->parsed())
            return cmd_render(hierarchy_path, assignment_path, features_path, out_path, out);
        if (ingest->parsed())
            return cmd_ingest(input_path, out_dir, aggregate, resolutions, out);
    } catch (const DataError& e) {
        err << json{{"error", "data"}, {"message", e.what()}}.dump() << '\n';
        return exit_data;
    } catch (const Error& e) {
        err << json{{"error", "config"}, {"message", e.what()}}.dump() << '\n';
        return exit_config;
    } catch (const fs::filesystem_error& e) {
        err << json{{"error", "config"}, {"message", e.what()}}.dump() << '\n';
        return exit_config;
    }
    return exit_config;
}

} // namespace pretopo::cli
