#include "pretopo/similarity.hpp"

#include "pretopo/csv.hpp"
#include "pretopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pretopo {

FeatureTable::FeatureTable(std::vector<std::string> ids) : ids_(std::move(ids)) {}

void FeatureTable::set_positions(std::vector<std::vector<double>> positions)
{
    if (positions.size() != ids_.size())
        throw ConfigError("position count does not match item count");
    if (!positions.empty()) {
        const auto dim = positions.front().size();
        if (dim == 0)
            throw ConfigError("positions must have at least one coordinate");
        for (const auto& p : positions)
            if (p.size() != dim)
                throw ConfigError("positions must share one dimension");
    }
    positions_ = std::move(positions);
    positions_set_ = true;
}

void FeatureTable::set_sizes(std::vector<double> sizes)
{
    if (sizes.size() != ids_.size())
        throw ConfigError("size count does not match item count");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (!(sizes[i] >= 0.0))
            throw ConfigError("size of item " + ids_[i] + " must be non-negative");
    sizes_ = std::move(sizes);
    sizes_set_ = true;
}

void FeatureTable::set_series(std::vector<std::vector<double>> series, const std::string& channel)
{
    if (series.size() != ids_.size())
        throw ConfigError("series count does not match item count for channel '" + channel + "'");
    if (!series.empty()) {
        const auto len = series.front().size();
        if (len < 2)
            throw ConfigError("series in channel '" + channel + "' must have at least 2 points");
        for (const auto& s : series)
            if (s.size() != len)
                throw ConfigError("series in channel '" + channel + "' must share one length");
    }
    series_[channel] = std::move(series);
}

const std::vector<std::vector<double>>& FeatureTable::positions() const
{
    if (!positions_set_)
        throw ConfigError("feature table has no positions");
    return positions_;
}

const std::vector<double>& FeatureTable::sizes() const
{
    if (!sizes_set_)
        throw ConfigError("feature table has no sizes");
    return sizes_;
}

const std::vector<std::vector<double>>& FeatureTable::series(const std::string& channel) const
{
    auto it = series_.find(channel);
    if (it == series_.end())
        throw ConfigError("feature table has no series channel '" + channel + "'");
    return it->second;
}

std::vector<std::string> FeatureTable::channels() const
{
    std::vector<std::string> out;
    for (const auto& [name, _] : series_)
        out.push_back(name);
    return out;
}

Criterion Criterion::euclidean(double radius)
{
    if (!(radius > 0.0))
        throw ConfigError("Euclidean ball radius must be > 0");
    return {Kind::EuclideanBall, radius, default_channel};
}

Criterion Criterion::size(double tolerance)
{
    if (!(tolerance >= 0.0))
        throw ConfigError("size tolerance must be >= 0");
    return {Kind::SizeBall, tolerance, default_channel};
}

Criterion Criterion::pearson(double rho, std::string channel)
{
    if (!(rho > -1.0 && rho <= 1.0))
        throw ConfigError("Pearson threshold must lie in (-1, 1]");
    return {Kind::PearsonBall, rho, std::move(channel)};
}

std::string Criterion::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::EuclideanBall: os << "euclidean(radius=" << threshold << ")"; break;
    case Kind::SizeBall: os << "size(tolerance=" << threshold << ")"; break;
    case Kind::PearsonBall: os << "pearson(rho=" << threshold << ", channel=" << channel << ")"; break;
    }
    return os.str();
}

namespace {

struct Centered {
    std::vector<double> values;
    double sum_sq = 0.0;
};

// Fixed left-to-right summation so every route through here yields the
// same bits for the same pair.
Centered center(std::span<const double> x)
{
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    Centered c;
    c.values.reserve(x.size());
    for (double v : x) {
        const double d = v - mean;
        c.values.push_back(d);
        c.sum_sq += d * d;
    }
    return c;
}

double correlate(const Centered& a, const Centered& b)
{
    double cross = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        cross += a.values[i] * b.values[i];
    const double r = cross / std::sqrt(a.sum_sq * b.sum_sq);
    return std::clamp(r, -1.0, 1.0);
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::vector<Centered> center_channel(const FeatureTable& table, const std::string& channel)
{
    const auto& series = table.series(channel);
    std::vector<Centered> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        out.push_back(center(series[i]));
        if (out.back().sum_sq == 0.0)
            throw DegenerateSeries(i, "channel " + channel);
    }
    return out;
}

} // namespace

double pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw ContractViolation("pearson: series lengths differ");
    if (x.size() < 2)
        throw ContractViolation("pearson: series need at least 2 points");
    const auto cx = center(x);
    if (cx.sum_sq == 0.0)
        throw DegenerateSeries(0);
    const auto cy = center(y);
    if (cy.sum_sq == 0.0)
        throw DegenerateSeries(1);
    return correlate(cx, cy);
}

DenseMatrix pairwise_matrix(const FeatureTable& table, const Criterion& criterion)
{
    const auto n = table.size();
    DenseMatrix m(n, n, 0.0);
    switch (criterion.kind) {
    case Criterion::Kind::EuclideanBall: {
        const auto& pos = table.positions();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m(i, j) = m(j, i) = euclidean_distance(pos[i], pos[j]);
        break;
    }
    case Criterion::Kind::SizeBall: {
        const auto& sz = table.sizes();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m(i, j) = m(j, i) = std::abs(sz[i] - sz[j]);
        break;
    }
    case Criterion::Kind::PearsonBall: {
        const auto centered = center_channel(table, criterion.channel);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
            for (std::size_t j = i + 1; j < n; ++j)
                m(i, j) = m(j, i) = correlate(centered[i], centered[j]);
        }
        break;
    }
    }
    return m;
}

DenseMatrix dissimilarity_matrix(const FeatureTable& table, const Criterion& criterion)
{
    DenseMatrix m = pairwise_matrix(table, criterion);
    if (criterion.is_correlation())
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = 1.0 - m(i, j);
    return m;
}

bool within_ball(const Criterion& criterion, double pairwise_value) noexcept
{
    return criterion.is_correlation() ? pairwise_value >= criterion.threshold : pairwise_value <= criterion.threshold;
}

PseudoclosureSpace build_basis(const FeatureTable& table, const std::vector<Criterion>& criteria,
                               NeighborhoodMode mode)
{
    if (criteria.empty())
        throw ConfigError("at least one criterion is required");
    const auto n = table.size();
    std::vector<std::vector<ElementSet>> bases(n);
    for (const auto& criterion : criteria) {
        const auto m = pairwise_matrix(table, criterion);
        for (std::size_t x = 0; x < n; ++x) {
            ElementSet ball(n);
            ball.insert(x);
            for (std::size_t y = 0; y < n; ++y)
                if (y != x && within_ball(criterion, m(x, y)))
                    ball.insert(y);
            bases[x].push_back(std::move(ball));
        }
    }
    Universe universe(table.ids());
    NeighborhoodBasis basis(n, std::move(bases));
    return mode == NeighborhoodMode::Prefilter ? PseudoclosureSpace::prefilter(std::move(universe), std::move(basis))
                                               : PseudoclosureSpace::filter(std::move(universe), std::move(basis));
}

FeatureTable read_feature_csv(std::istream& in)
{
    csv::Reader reader(in);
    std::vector<std::string_view> fields;
    if (!reader.next(fields))
        return FeatureTable(std::vector<std::string>{});
    const std::vector<std::string> header(fields.begin(), fields.end());
    const std::size_t header_line = reader.line();

    std::optional<std::size_t> id_col, x_col, y_col, size_col;
    std::vector<std::pair<std::size_t, std::size_t>> series_cols; // (index, column)
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto& h = header[c];
        if (h == "item_id")
            id_col = c;
        else if (h == "x")
            x_col = c;
        else if (h == "y")
            y_col = c;
        else if (h == "size")
            size_col = c;
        else if (h.rfind("series_", 0) == 0)
            series_cols.emplace_back(
                static_cast<std::size_t>(csv::parse_int(std::string_view(h).substr(7), header_line, "series column")),
                c);
        else
            throw ParseError("unknown feature column '" + h + "'", header_line);
    }
    if (!id_col)
        throw ParseError("feature CSV needs an item_id column", header_line);
    if (x_col.has_value() != y_col.has_value())
        throw ParseError("feature CSV needs both x and y or neither", header_line);
    std::sort(series_cols.begin(), series_cols.end());
    for (std::size_t i = 0; i < series_cols.size(); ++i)
        if (series_cols[i].first != i)
            throw ParseError("series columns must be series_0..series_{L-1} without gaps", header_line);

    std::vector<std::string> ids;
    std::vector<std::vector<double>> positions;
    std::vector<double> sizes;
    std::vector<std::vector<double>> series;
    while (reader.next(fields)) {
        const auto line = reader.line();
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line);
        ids.emplace_back(fields[*id_col]);
        if (ids.back().empty())
            throw ParseError("empty item_id", line);
        if (x_col)
            positions.push_back(
                {csv::parse_double(fields[*x_col], line, "x"), csv::parse_double(fields[*y_col], line, "y")});
        if (size_col)
            sizes.push_back(csv::parse_double(fields[*size_col], line, "size"));
        if (!series_cols.empty()) {
            std::vector<double> s;
            s.reserve(series_cols.size());
            for (auto [_, col] : series_cols)
                s.push_back(csv::parse_double(fields[col], line, "series"));
            series.push_back(std::move(s));
        }
    }
    FeatureTable table(std::move(ids));
    try {
        if (x_col)
            table.set_positions(std::move(positions));
        if (size_col)
            table.set_sizes(std::move(sizes));
        if (!series_cols.empty())
            table.set_series(std::move(series));
    } catch (const ConfigError& e) {
        throw ParseError(e.what(), 0);
    }
    // Surface duplicate ids as a parse problem as well.
    try {
        Universe check(table.ids());
    } catch (const ConfigError& e) {
        throw ParseError(e.what(), 0);
    }
    return table;
}

FeatureTable read_feature_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open feature file '" + path + "'");
    return read_feature_csv(in);
}

void write_feature_csv(std::ostream& out, const FeatureTable& table, const std::string& channel)
{
    const bool pos = table.has_positions() && (table.size() == 0 || table.positions().front().size() == 2);
    if (table.has_positions() && !pos)
        throw ConfigError("CSV export supports two-dimensional positions only");
    const bool sz = table.has_sizes();
    const bool ser = table.has_series(channel);
    const std::size_t len = ser && table.size() ? table.series(channel).front().size() : 0;

    out << "item_id";
    if (pos)
        out << ",x,y";
    if (sz)
        out << ",size";
    for (std::size_t i = 0; i < len; ++i)
        out << ",series_" << i;
    out << '\n';
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << table.ids()[r];
        if (pos)
            out << ',' << csv::format_double(table.positions()[r][0]) << ','
                << csv::format_double(table.positions()[r][1]);
        if (sz)
            out << ',' << csv::format_double(table.sizes()[r]);
        if (ser)
            for (double v : table.series(channel)[r])
                out << ',' << csv::format_double(v);
        out << '\n';
    }
}

} // namespace pretopo
