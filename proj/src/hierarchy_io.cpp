#include "pretopo/hierarchy_io.hpp"

#include "pretopo/csv.hpp"
#include "pretopo/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace pretopo {

using nlohmann::json;

namespace {

std::string item_name(const std::vector<std::string>& items, std::size_t x)
{
    return x < items.size() ? items[x] : std::to_string(x);
}

} // namespace

std::string write_hierarchy_json(const QuasiHierarchy& qh, const std::vector<std::string>& items)
{
    json doc;
    doc["schema_version"] = 1;
    json names = json::array();
    for (std::size_t x = 0; x < qh.universe_size; ++x)
        names.push_back(item_name(items, x));
    doc["items"] = std::move(names);
    doc["threshold"] = qh.threshold;
    json sets = json::array();
    for (std::size_t i = 0; i < qh.family.size(); ++i)
        sets.push_back({{"id", i}, {"size", qh.family[i].size()}, {"members", qh.family[i].members()}});
    doc["sets"] = std::move(sets);
    json edges = json::array();
    for (const auto& e : qh.parent_edges)
        edges.push_back({e.parent, e.child, e.weight});
    doc["edges"] = std::move(edges);
    doc["roots"] = qh.roots;
    return doc.dump(2) + "\n";
}

HierarchyDocument read_hierarchy_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("hierarchy JSON: ") + e.what(), 0);
    }
    try {
        if (doc.value("schema_version", 1) != 1)
            throw ConfigError("unsupported hierarchy schema_version");
        HierarchyDocument out;
        out.items = doc.at("items").get<std::vector<std::string>>();
        const auto n = out.items.size();
        auto& qh = out.hierarchy;
        qh.universe_size = n;
        qh.threshold = doc.value("threshold", 0.5);
        std::vector<ElementSet> sets;
        for (const auto& s : doc.at("sets"))
            sets.emplace_back(n, s.at("members").get<std::vector<std::size_t>>());
        const auto count = sets.size();
        qh.family = ClosedFamily(sets);
        if (qh.family.size() != count)
            throw ConfigError("hierarchy sets are not distinct");
        // Stored ids must follow canonical order for the edges to line up.
        for (std::size_t i = 0; i < count; ++i)
            if (!(qh.family[i] == sets[i]))
                throw ConfigError("hierarchy sets are not in canonical order");
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw ConfigError("hierarchy edges must be [parent, child, weight]");
            ParentEdge edge{e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()};
            if (edge.parent >= count || edge.child >= count)
                throw ConfigError("hierarchy edge references an unknown set");
            qh.parent_edges.push_back(edge);
        }
        qh.roots = doc.at("roots").get<std::vector<std::size_t>>();
        for (auto r : qh.roots)
            if (r >= count)
                throw ConfigError("hierarchy root references an unknown set");
        qh.adjacency = extract_adjacency(qh.family);
        qh.coverage = ElementSet(n);
        for (const auto& s : qh.family)
            qh.coverage |= s;
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("hierarchy JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("hierarchy JSON: ") + e.what());
    }
}

std::string write_hierarchy_dot(const QuasiHierarchy& qh)
{
    std::ostringstream os;
    os << "digraph quasi_hierarchy {\n";
    for (std::size_t i = 0; i < qh.family.size(); ++i)
        os << "  n" << i << " [label=\"" << i << " (" << qh.family[i].size() << ")\"];\n";
    for (const auto& e : qh.parent_edges)
        os << "  n" << e.parent << " -> n" << e.child << " [label=\"" << csv::format_double(e.weight) << "\"];\n";
    os << "}\n";
    return os.str();
}

void write_assignment_csv(std::ostream& out, const ClusteringResult& result, const std::vector<std::string>& items)
{
    out << "item_id,cluster_id\n";
    for (std::size_t x = 0; x < result.assignment.size(); ++x) {
        out << item_name(items, x) << ',';
        if (result.assignment[x])
            out << *result.assignment[x];
        else
            out << -1;
        out << '\n';
    }
}

Partition read_partition_csv(std::istream& in)
{
    csv::Reader reader(in);
    std::vector<std::string_view> fields;
    if (!reader.next(fields))
        throw ParseError("partition CSV is empty", 0);
    if (fields.size() != 2 || fields[0] != "item_id")
        throw ParseError("expected header 'item_id,<label column>'", reader.line());
    std::vector<std::string> items, labels;
    while (reader.next(fields)) {
        if (fields.size() != 2)
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), reader.line());
        if (fields[0].empty() || fields[1].empty())
            throw ParseError("empty field", reader.line());
        items.emplace_back(fields[0]);
        labels.emplace_back(fields[1]);
    }
    try {
        return Partition(std::move(items), std::move(labels));
    } catch (const ConfigError& e) {
        throw ParseError(e.what(), 0);
    }
}

Partition read_partition_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open partition file '" + path + "'");
    return read_partition_csv(in);
}

} // namespace pretopo
