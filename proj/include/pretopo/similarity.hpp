#pragma once

#include "pretopo/core.hpp"
#include "pretopo/matrix.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pretopo {

inline constexpr const char* default_channel = "series";

/**
 * Per-item features. Every feature is either present for all items or
 * absent for all. Time series are grouped into named channels (one per
 * resampling resolution, for instance); all series of a channel share one
 * length L >= 2.
 */
class FeatureTable {
public:
    FeatureTable() = default;
    explicit FeatureTable(std::vector<std::string> ids);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    void set_positions(std::vector<std::vector<double>> positions);
    void set_sizes(std::vector<double> sizes);
    void set_series(std::vector<std::vector<double>> series, const std::string& channel = default_channel);

    bool has_positions() const noexcept { return positions_set_; }
    bool has_sizes() const noexcept { return sizes_set_; }
    bool has_series(const std::string& channel = default_channel) const { return series_.contains(channel); }

    const std::vector<std::vector<double>>& positions() const;
    const std::vector<double>& sizes() const;
    const std::vector<std::vector<double>>& series(const std::string& channel = default_channel) const;
    std::vector<std::string> channels() const;

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<double>> positions_;
    bool positions_set_ = false;
    std::vector<double> sizes_;
    bool sizes_set_ = false;
    std::map<std::string, std::vector<std::vector<double>>> series_;
};

struct Criterion {
    enum class Kind { EuclideanBall, SizeBall, PearsonBall };

    Kind kind = Kind::EuclideanBall;
    // radius (Euclidean), tolerance (size) or correlation floor (Pearson)
    double threshold = 0.0;
    std::string channel = default_channel;

    static Criterion euclidean(double radius);
    static Criterion size(double tolerance);
    static Criterion pearson(double rho, std::string channel = default_channel);

    bool is_correlation() const noexcept { return kind == Kind::PearsonBall; }
    std::string describe() const;
};

enum class NeighborhoodMode { Prefilter, Filter };

// Sample correlation, clamped to [-1, 1]. Throws ContractViolation on length
// mismatch or L < 2, DegenerateSeries (item 0 or 1) on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Distances for metric criteria (0 on the diagonal), correlations for
// Pearson (1 on the diagonal).
DenseMatrix pairwise_matrix(const FeatureTable& table, const Criterion& criterion);

// Dissimilarity used to rank candidates: the distance for metric criteria,
// 1 - correlation for Pearson.
DenseMatrix dissimilarity_matrix(const FeatureTable& table, const Criterion& criterion);

// Ball of item x under the criterion given its pairwise matrix row.
bool within_ball(const Criterion& criterion, double pairwise_value) noexcept;

// B_k(x) = {y | y within the criterion-k ball of x} plus x, packaged as a
// prefilter or filter neighborhood space over the table's items.
PseudoclosureSpace build_basis(const FeatureTable& table, const std::vector<Criterion>& criteria,
                               NeighborhoodMode mode = NeighborhoodMode::Prefilter);

// CSV schema: header row, then one row per item.
//   item_id[,x,y][,size][,series_0,...,series_{L-1}]
// Any subset of the feature groups may be present; item_id is required.
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv_file(const std::string& path);
void write_feature_csv(std::ostream& out, const FeatureTable& table, const std::string& channel = default_channel);

} // namespace pretopo
