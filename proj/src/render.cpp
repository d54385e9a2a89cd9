#include "pretopo/render.hpp"

#include "pretopo/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace pretopo {

std::string render_tree_dot(const QuasiHierarchy& qh, std::size_t min_exclusive)
{
    const auto m = qh.family.size();
    std::vector<bool> shown(m);
    for (std::size_t i = 0; i < m; ++i)
        shown[i] = qh.family[i].size() > min_exclusive;

    std::vector<std::vector<std::size_t>> children(m);
    for (const auto& e : qh.parent_edges)
        if (shown[e.parent] && shown[e.child])
            children[e.parent].push_back(e.child);

    // Edges always point to strictly smaller sets, so ascending size is a
    // reverse topological order.
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return qh.family[a].size() < qh.family[b].size(); });
    std::vector<ElementSet> reach(m, ElementSet(m));
    for (auto v : order)
        for (auto c : children[v]) {
            reach[v].insert(c);
            reach[v] |= reach[c];
        }

    std::ostringstream os;
    os << "digraph tree {\n  node [shape=circle];\n";
    for (std::size_t i = 0; i < m; ++i)
        if (shown[i])
            os << "  n" << i << " [label=\"" << i << "\\n" << qh.family[i].size() << "\"];\n";
    for (std::size_t p = 0; p < m; ++p)
        for (auto c : children[p]) {
            const bool implied = std::any_of(children[p].begin(), children[p].end(),
                                             [&](std::size_t other) { return other != c && reach[other].contains(c); });
            if (!implied)
                os << "  n" << p << " -> n" << c << ";\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                              "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

constexpr double width = 800.0;
constexpr double height = 600.0;
constexpr double margin = 40.0;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Colour per item: clusters get palette entries in first-appearance order,
// the outlier label is black.
std::vector<std::string> colours_for(const FeatureTable& table, const Partition& assignment)
{
    std::unordered_map<std::string, std::string> label_of;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        label_of.emplace(assignment.items()[i], assignment.labels()[i]);
    std::map<std::string, std::size_t> slot;
    std::vector<std::string> out;
    for (const auto& id : table.ids()) {
        auto it = label_of.find(id);
        if (it == label_of.end())
            throw ConfigError("item '" + id + "' has no cluster assignment");
        if (it->second == Partition::outlier_label) {
            out.emplace_back("#000000");
            continue;
        }
        auto [s, _] = slot.emplace(it->second, slot.size());
        out.emplace_back(palette[s->second % palette.size()]);
    }
    if (assignment.size() != table.size())
        throw ConfigError("assignment and features cover different items");
    return out;
}

struct Scale {
    double lo, hi, out_lo, out_hi;
    double operator()(double v) const
    {
        if (hi == lo)
            return 0.5 * (out_lo + out_hi);
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

std::string svg_header()
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
           "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace

std::string render_scatter_svg(const FeatureTable& table, const Partition& assignment)
{
    if (!table.has_positions() || (table.size() && table.positions().front().size() != 2))
        throw ConfigError("scatter plot needs two-dimensional positions");
    const auto colours = colours_for(table, assignment);
    const auto& pos = table.positions();
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& p : pos) {
        xlo = std::min(xlo, p[0]);
        xhi = std::max(xhi, p[0]);
        ylo = std::min(ylo, p[1]);
        yhi = std::max(yhi, p[1]);
    }
    const Scale sx{xlo, xhi, margin, width - margin};
    const Scale sy{ylo, yhi, height - margin, margin};
    std::optional<Scale> sr;
    if (table.has_sizes() && table.size()) {
        const auto [lo, hi] = std::minmax_element(table.sizes().begin(), table.sizes().end());
        sr = Scale{*lo, *hi, 3.0, 12.0};
    }
    std::ostringstream os;
    os << svg_header();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double r = sr ? (*sr)(table.sizes()[i]) : 5.0;
        os << "<circle cx=\"" << fmt(sx(pos[i][0])) << "\" cy=\"" << fmt(sy(pos[i][1])) << "\" r=\"" << fmt(r)
           << "\" fill=\"" << colours[i] << "\" fill-opacity=\"0.8\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_series_svg(const FeatureTable& table, const Partition& assignment)
{
    if (!table.has_series())
        throw ConfigError("series plot needs a series channel");
    const auto colours = colours_for(table, assignment);
    const auto& series = table.series();
    if (series.empty())
        return svg_header() + "</svg>\n";
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : series)
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const auto len = series.front().size();
    const Scale sx{0.0, static_cast<double>(len - 1), margin, width - margin};
    const Scale sy{lo, hi, height - margin, margin};
    std::ostringstream os;
    os << svg_header();
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << "<polyline fill=\"none\" stroke=\"" << colours[i] << "\" stroke-width=\"0.8\" stroke-opacity=\"0.6\" points=\"";
        for (std::size_t t = 0; t < len; ++t)
            os << (t ? " " : "") << fmt(sx(static_cast<double>(t))) << ',' << fmt(sy(series[i][t]));
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace pretopo
