#include "pretopo/space_json.hpp"

#include "pretopo/errors.hpp"

#include <json.hpp>

namespace pretopo {

using nlohmann::json;

std::string write_space_json(const PseudoclosureSpace& space)
{
    json doc;
    doc["schema_version"] = 1;
    const auto& u = space.universe();
    if (u.has_labels())
        doc["universe"] = u.labels();
    else
        doc["universe"] = u.size();
    doc["kind"] = to_string(space.kind());
    if (space.kind() == SpaceKind::Graph) {
        json edges = json::array();
        for (auto [from, to] : space.edges())
            edges.push_back({from, to});
        doc["edges"] = std::move(edges);
    } else {
        json bases = json::array();
        for (std::size_t x = 0; x < space.size(); ++x) {
            json family = json::array();
            for (const auto& b : space.basis().of(x))
                family.push_back(b.members());
            bases.push_back(std::move(family));
        }
        doc["bases"] = std::move(bases);
    }
    return doc.dump(2) + "\n";
}

PseudoclosureSpace read_space_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("space JSON: ") + e.what(), 0);
    }
    try {
        if (doc.value("schema_version", 1) != 1)
            throw ConfigError("unsupported space schema_version");
        const auto& ju = doc.at("universe");
        Universe universe = ju.is_number_unsigned() ? Universe(ju.get<std::size_t>())
                                                    : Universe(ju.get<std::vector<std::string>>());
        const auto n = universe.size();
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "graph") {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const auto& e : doc.value("edges", json::array())) {
                if (!e.is_array() || e.size() != 2)
                    throw ConfigError("graph edges must be [from, to] pairs");
                edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
            }
            return PseudoclosureSpace::graph(std::move(universe), edges);
        }
        if (kind != "prefilter" && kind != "filter")
            throw ConfigError("unknown space kind '" + kind + "'");
        const auto& jb = doc.at("bases");
        if (!jb.is_array() || jb.size() != n)
            throw ConfigError("'bases' must hold one family per item");
        std::vector<std::vector<ElementSet>> bases(n);
        for (std::size_t x = 0; x < n; ++x)
            for (const auto& members : jb[x])
                bases[x].emplace_back(n, members.get<std::vector<std::size_t>>());
        NeighborhoodBasis basis(n, std::move(bases));
        return kind == "prefilter" ? PseudoclosureSpace::prefilter(std::move(universe), std::move(basis))
                                   : PseudoclosureSpace::filter(std::move(universe), std::move(basis));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("space JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("space JSON: ") + e.what());
    }
}

} // namespace pretopo
