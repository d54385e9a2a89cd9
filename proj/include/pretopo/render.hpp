#pragma once

#include "pretopo/eval.hpp"
#include "pretopo/hierarchy.hpp"
#include "pretopo/similarity.hpp"

#include <string>

namespace pretopo {

// Tree view of the hierarchy: only sets with more than `min_exclusive`
// members are drawn, and edges implied through an intermediate drawn set
// are omitted.
std::string render_tree_dot(const QuasiHierarchy& hierarchy, std::size_t min_exclusive = 2);

// Points coloured by cluster, outliers black, radius scaled by size when
// the table has sizes. Requires 2-D positions.
std::string render_scatter_svg(const FeatureTable& table, const Partition& assignment);

// One polyline per item of the default series channel, coloured by cluster.
std::string render_series_svg(const FeatureTable& table, const Partition& assignment);

} // namespace pretopo
