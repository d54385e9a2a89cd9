#pragma once

#include "pretopo/eval.hpp"
#include "pretopo/hierarchy.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pretopo {

// {"schema_version": 1, "items": [...], "threshold": th,
//  "sets": [{"id": 0, "size": 3, "members": [...]}, ...],
//  "edges": [[parent, child, weight], ...], "roots": [...]}
std::string write_hierarchy_json(const QuasiHierarchy& hierarchy, const std::vector<std::string>& items);

struct HierarchyDocument {
    QuasiHierarchy hierarchy; // adjacency recomputed from the sets
    std::vector<std::string> items;
};

HierarchyDocument read_hierarchy_json(std::string_view text);

// Every set as a node labelled "id (size)", every parent edge with its weight.
std::string write_hierarchy_dot(const QuasiHierarchy& hierarchy);

// `item_id,cluster_id`, cluster_id = -1 for outliers.
void write_assignment_csv(std::ostream& out, const ClusteringResult& result, const std::vector<std::string>& items);

// Reads any two-column `item_id,<label>` CSV (assignments or ground truth).
Partition read_partition_csv(std::istream& in);
Partition read_partition_csv_file(const std::string& path);

} // namespace pretopo
