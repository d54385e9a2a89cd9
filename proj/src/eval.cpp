#include "pretopo/eval.hpp"

#include "pretopo/errors.hpp"

#include <unordered_map>

namespace pretopo {

Partition::Partition(std::vector<std::string> items, std::vector<std::string> labels)
    : items_(std::move(items)), labels_(std::move(labels))
{
    if (items_.size() != labels_.size())
        throw ConfigError("partition needs one label per item");
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& item : items_)
        if (!seen.emplace(item, 0).second)
            throw ConfigError("duplicate item '" + item + "' in partition");
}

Partition Partition::from_indices(const std::vector<std::int64_t>& labels)
{
    std::vector<std::string> items, names;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        items.push_back(std::to_string(i));
        names.push_back(std::to_string(labels[i]));
    }
    return Partition(std::move(items), std::move(names));
}

Partition Partition::from_assignment(const std::vector<std::optional<std::size_t>>& assignment)
{
    std::vector<std::string> items, names;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        items.push_back(std::to_string(i));
        names.push_back(assignment[i] ? std::to_string(*assignment[i]) : std::string(outlier_label));
    }
    return Partition(std::move(items), std::move(names));
}

namespace {

// Labels of q re-ordered to follow p's item order.
std::vector<std::string> aligned_labels(const Partition& p, const Partition& q)
{
    if (p.size() != q.size())
        throw ConfigError("partitions cover different item sets (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + " items)");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < q.size(); ++i)
        index.emplace(q.items()[i], i);
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& item : p.items()) {
        auto it = index.find(item);
        if (it == index.end())
            throw ConfigError("item '" + item + "' missing from the second partition");
        out.push_back(q.labels()[it->second]);
    }
    return out;
}

double choose2(double k) { return k * (k - 1.0) / 2.0; }

// Dense ids in first-appearance order.
std::vector<std::size_t> encode(const std::vector<std::string>& labels, std::vector<std::string>& names)
{
    std::unordered_map<std::string, std::size_t> ids;
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        auto [it, inserted] = ids.emplace(l, names.size());
        if (inserted)
            names.push_back(l);
        out.push_back(it->second);
    }
    return out;
}

} // namespace

double adjusted_rand_index(const Partition& p, const Partition& q)
{
    const auto q_labels = aligned_labels(p, q);
    const auto n = p.size();
    if (n < 2)
        throw ConfigError("adjusted Rand index needs at least 2 items");

    std::vector<std::string> p_names, q_names;
    const auto a = encode(p.labels(), p_names);
    const auto b = encode(q_labels, q_names);
    std::vector<std::vector<double>> table(p_names.size(), std::vector<double>(q_names.size(), 0.0));
    std::vector<double> row(p_names.size(), 0.0), col(q_names.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        table[a[i]][b[i]] += 1.0;
        row[a[i]] += 1.0;
        col[b[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& r : table)
        for (double c : r)
            index += choose2(c);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (double r : row)
        sum_rows += choose2(r);
    for (double c : col)
        sum_cols += choose2(c);
    const double expected = sum_rows * sum_cols / choose2(static_cast<double>(n));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    // Both partitions all-singletons or both a single cluster.
    if (max_index == expected)
        return 1.0;
    return (index - expected) / (max_index - expected);
}

ConfusionMatrix confusion_matrix(const Partition& truth, const Partition& found)
{
    const auto found_labels = aligned_labels(truth, found);
    ConfusionMatrix cm;
    const auto rows = encode(truth.labels(), cm.row_labels);
    const auto cols = encode(found_labels, cm.col_labels);
    cm.counts.assign(cm.row_labels.size(), std::vector<std::size_t>(cm.col_labels.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        ++cm.counts[rows[i]][cols[i]];
    return cm;
}

} // namespace pretopo
