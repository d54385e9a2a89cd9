#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pretopo {

// Hard labelling of a declared item set. Labels are opaque strings; the
// outlier label is an ordinary label and therefore forms its own cluster.
class Partition {
public:
    static constexpr const char* outlier_label = "-1";

    Partition() = default;
    Partition(std::vector<std::string> items, std::vector<std::string> labels);

    // Items named "0".."n-1"; a missing cluster maps to outlier_label.
    static Partition from_indices(const std::vector<std::int64_t>& labels);
    static Partition from_assignment(const std::vector<std::optional<std::size_t>>& assignment);

    std::size_t size() const noexcept { return items_.size(); }
    const std::vector<std::string>& items() const noexcept { return items_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::vector<std::string> items_;
    std::vector<std::string> labels_;
};

// Chance-corrected pair-counting agreement; 1 for identical partitions.
// Items are matched by name. ConfigError for differing item sets or n < 2.
double adjusted_rand_index(const Partition& p, const Partition& q);

struct ConfusionMatrix {
    std::vector<std::string> row_labels; // ground truth, first-appearance order
    std::vector<std::string> col_labels; // found, first-appearance order
    std::vector<std::vector<std::size_t>> counts;
};

ConfusionMatrix confusion_matrix(const Partition& truth, const Partition& found);

} // namespace pretopo
