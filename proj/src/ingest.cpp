#include "pretopo/ingest.hpp"

#include "pretopo/csv.hpp"
#include "pretopo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <unordered_map>

namespace pretopo {

namespace {

constexpr std::int64_t seconds_per_day = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d)
{
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d)
{
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
}

bool all_digits(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

unsigned digits(std::string_view s, std::size_t pos, std::size_t count, std::size_t line)
{
    if (pos + count > s.size())
        throw ParseError("truncated timestamp '" + std::string(s) + "'", line);
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("invalid timestamp '" + std::string(s) + "'", line);
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    return v;
}

void expect(std::string_view s, std::size_t pos, char c, std::size_t line)
{
    if (pos >= s.size() || s[pos] != c)
        throw ParseError("invalid timestamp '" + std::string(s) + "'", line);
}

} // namespace

std::int64_t parse_timestamp(std::string_view s, std::size_t line)
{
    if (all_digits(s))
        return csv::parse_int(s, line, "timestamp");
    // YYYY-MM-DD[ T]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]
    const auto year = digits(s, 0, 4, line);
    expect(s, 4, '-', line);
    const auto month = digits(s, 5, 2, line);
    expect(s, 7, '-', line);
    const auto day = digits(s, 8, 2, line);
    unsigned hour = 0, minute = 0, second = 0;
    std::size_t pos = 10;
    if (pos < s.size()) {
        if (s[pos] != 'T' && s[pos] != ' ')
            throw ParseError("invalid timestamp '" + std::string(s) + "'", line);
        hour = digits(s, pos + 1, 2, line);
        expect(s, pos + 3, ':', line);
        minute = digits(s, pos + 4, 2, line);
        pos += 6;
        if (pos < s.size() && s[pos] == ':') {
            second = digits(s, pos + 1, 2, line);
            pos += 3;
            if (pos < s.size() && s[pos] == '.') {
                ++pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
            }
        }
    }
    std::int64_t offset = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            pos += 1;
        } else if ((s[pos] == '+' || s[pos] == '-') && pos + 6 == s.size()) {
            const auto oh = digits(s, pos + 1, 2, line);
            expect(s, pos + 3, ':', line);
            const auto om = digits(s, pos + 4, 2, line);
            offset = (s[pos] == '+' ? 1 : -1) * static_cast<std::int64_t>(oh * 3600 + om * 60);
            pos += 6;
        } else {
            throw ParseError("invalid timestamp '" + std::string(s) + "'", line);
        }
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        throw ParseError("timestamp field out of range in '" + std::string(s) + "'", line);
    const auto days = days_from_civil(year, month, day);
    std::int64_t y = 0;
    unsigned m = 0, d = 0;
    civil_from_days(days, y, m, d);
    if (y != year || m != static_cast<unsigned>(month) || d != static_cast<unsigned>(day))
        throw ParseError("no such calendar date in '" + std::string(s) + "'", line);
    return days * seconds_per_day + hour * 3600 + minute * 60 + second - offset;
}

std::vector<RawSeries> load_csv(std::istream& in)
{
    csv::Reader reader(in);
    std::vector<std::string_view> fields;
    if (!reader.next(fields))
        return {};
    if (fields.size() != 3 || fields[0] != "site_id" || fields[1] != "timestamp" || fields[2] != "value")
        throw ParseError("expected header 'site_id,timestamp,value'", reader.line());

    std::unordered_map<std::string, std::size_t> index;
    std::vector<RawSeries> sites;
    while (reader.next(fields)) {
        const auto line = reader.line();
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line);
        if (fields[0].empty())
            throw ParseError("empty site_id", line);
        const auto ts = parse_timestamp(fields[1], line);
        const auto value = csv::parse_double(fields[2], line, "value");
        if (!(value >= 0.0))
            throw DataError("line " + std::to_string(line) + ": negative consumption value");
        auto [it, inserted] = index.try_emplace(std::string(fields[0]), sites.size());
        if (inserted)
            sites.push_back({it->first, {}});
        auto& samples = sites[it->second].samples;
        if (!samples.empty() && ts <= samples.back().timestamp)
            throw DataError("line " + std::to_string(line) + ": timestamps of site '" + it->first +
                            "' are not strictly increasing");
        samples.push_back({ts, value});
    }
    std::sort(sites.begin(), sites.end(), [](const RawSeries& a, const RawSeries& b) { return a.site_id < b.site_id; });
    return sites;
}

std::vector<RawSeries> load_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open consumption file '" + path + "'");
    return load_csv(in);
}

const char* to_string(Resolution r)
{
    switch (r) {
    case Resolution::HalfHour: return "halfhour";
    case Resolution::Day: return "day";
    case Resolution::Week: return "week";
    case Resolution::Month: return "month";
    }
    return "?";
}

Resolution parse_resolution(std::string_view name)
{
    for (auto r : all_resolutions)
        if (name == to_string(r))
            return r;
    throw ConfigError("unknown resolution '" + std::string(name) + "'");
}

std::int64_t bucket_index(std::int64_t t, Resolution r)
{
    switch (r) {
    case Resolution::HalfHour: return floor_div(t, 1800);
    case Resolution::Day: return floor_div(t, seconds_per_day);
    // 1970-01-05 (epoch day 4) was a Monday.
    case Resolution::Week: return floor_div(floor_div(t, seconds_per_day) - 4, 7);
    case Resolution::Month: {
        std::int64_t y;
        unsigned m, d;
        civil_from_days(floor_div(t, seconds_per_day), y, m, d);
        return y * 12 + (m - 1);
    }
    }
    return 0;
}

std::optional<std::vector<double>> resample(const RawSeries& series, Resolution resolution, TimeWindow window,
                                            Aggregate aggregate)
{
    if (window.end < window.start)
        throw ContractViolation("resample: window end precedes start");
    const auto first = bucket_index(window.start, resolution);
    const auto count = static_cast<std::size_t>(bucket_index(window.end, resolution) - first + 1);
    std::vector<double> sum(count, 0.0);
    std::vector<std::size_t> hits(count, 0);
    std::size_t inside = 0;
    for (const auto& s : series.samples) {
        if (s.timestamp < window.start || s.timestamp > window.end)
            continue;
        const auto b = static_cast<std::size_t>(bucket_index(s.timestamp, resolution) - first);
        sum[b] += s.value;
        ++hits[b];
        ++inside;
    }
    if (inside == 0)
        throw DataError("site '" + series.site_id + "' has no samples inside the window");
    if (hits.front() == 0 || hits.back() == 0)
        return std::nullopt;

    std::vector<double> out(count, 0.0);
    for (std::size_t b = 0; b < count; ++b)
        if (hits[b])
            out[b] = aggregate == Aggregate::Mean ? sum[b] / static_cast<double>(hits[b]) : sum[b];
    for (std::size_t b = 1; b + 1 < count; ++b) {
        if (hits[b])
            continue;
        std::size_t hi = b;
        while (!hits[hi])
            ++hi;
        const std::size_t lo = b - 1;
        const double left = out[lo];
        const double right = out[hi];
        for (std::size_t k = b; k < hi; ++k)
            out[k] = left + (right - left) * static_cast<double>(k - lo) / static_cast<double>(hi - lo);
        b = hi;
    }
    return out;
}

WindowSelection common_window(const std::vector<RawSeries>& sites)
{
    WindowSelection sel;
    if (sites.empty())
        return sel;
    std::vector<double> lengths;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i].samples.empty()) {
            sel.dropped_reasons.push_back("site '" + sites[i].site_id + "' has no samples");
            continue;
        }
        sel.kept.push_back(i);
        lengths.push_back(static_cast<double>(sites[i].samples.back().timestamp - sites[i].samples.front().timestamp));
    }
    if (sel.kept.empty())
        throw DataError("no site has any sample");
    std::sort(lengths.begin(), lengths.end());
    const auto mid = lengths.size() / 2;
    const double median = lengths.size() % 2 ? lengths[mid] : 0.5 * (lengths[mid - 1] + lengths[mid]);
    const double required = 0.8 * median;

    auto window_of = [&](const std::vector<std::size_t>& kept, std::size_t skip) {
        TimeWindow w{std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
        for (auto i : kept) {
            if (i == skip)
                continue;
            w.start = std::max(w.start, sites[i].samples.front().timestamp);
            w.end = std::min(w.end, sites[i].samples.back().timestamp);
        }
        return w;
    };
    auto long_enough = [&](const TimeWindow& w) {
        return w.end >= w.start && static_cast<double>(w.length()) >= required;
    };
    const std::size_t none = sites.size();

    while (true) {
        const auto w = window_of(sel.kept, none);
        if (long_enough(w)) {
            sel.window = w;
            return sel;
        }
        if (sel.kept.size() == 1)
            throw DataError("no common time window across sites");
        // The binding constraints are the latest start and the earliest end.
        std::size_t late = sel.kept.front(), early = sel.kept.front();
        for (auto i : sel.kept) {
            if (sites[i].samples.front().timestamp > sites[late].samples.front().timestamp)
                late = i;
            if (sites[i].samples.back().timestamp < sites[early].samples.back().timestamp)
                early = i;
        }
        const auto w_late = window_of(sel.kept, late);
        const auto w_early = window_of(sel.kept, early);
        const auto drop = (w_early.length() > w_late.length()) ? early : late;
        sel.dropped_reasons.push_back("site '" + sites[drop].site_id + "' shrinks the common window below 80% of " +
                                      "the median coverage");
        sel.kept.erase(std::find(sel.kept.begin(), sel.kept.end(), drop));
    }
}

FeatureTable ResampledTable::to_feature_table() const
{
    FeatureTable table(site_ids);
    for (const auto& [res, rows] : series)
        table.set_series(rows, to_string(res));
    return table;
}

ResampledTable resample_table(const std::vector<RawSeries>& sites, const std::vector<Resolution>& resolutions,
                              Aggregate aggregate)
{
    ResampledTable out;
    if (resolutions.empty())
        throw ConfigError("at least one resolution is required");
    for (auto r : resolutions)
        out.series[r];
    if (sites.empty())
        return out;
    auto selection = common_window(sites);
    out.window = selection.window;
    out.warnings = std::move(selection.dropped_reasons);
    for (auto i : selection.kept) {
        std::map<Resolution, std::vector<double>> rows;
        std::string problem;
        for (auto r : resolutions) {
            try {
                auto v = resample(sites[i], r, out.window, aggregate);
                if (!v) {
                    problem = std::string("leading or trailing gap at resolution ") + to_string(r);
                    break;
                }
                rows[r] = std::move(*v);
            } catch (const DataError& e) {
                problem = e.what();
                break;
            }
        }
        if (!problem.empty()) {
            out.warnings.push_back("site '" + sites[i].site_id + "' excluded: " + problem);
            continue;
        }
        out.site_ids.push_back(sites[i].site_id);
        for (auto& [r, v] : rows)
            out.series[r].push_back(std::move(v));
    }
    // A correlation needs at least two buckets.
    for (auto it = out.series.begin(); it != out.series.end();) {
        if (!it->second.empty() && it->second.front().size() < 2) {
            out.warnings.push_back(std::string("resolution ") + to_string(it->first) +
                                   " dropped: the common window spans a single bucket");
            it = out.series.erase(it);
        } else {
            ++it;
        }
    }
    return out;
}

std::vector<Criterion> build_resolution_criteria(const ResampledTable& table, const std::map<Resolution, double>& rho)
{
    if (table.site_ids.empty())
        throw ConfigError("resampled table is empty");
    if (rho.empty())
        throw ConfigError("at least one resolution threshold is required");
    std::vector<Criterion> criteria;
    for (const auto& [res, threshold] : rho) {
        auto it = table.series.find(res);
        if (it == table.series.end())
            throw ConfigError(std::string("resolution ") + to_string(res) + " was not resampled");
        for (std::size_t site = 0; site < it->second.size(); ++site) {
            const auto& s = it->second[site];
            if (std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); }))
                throw DegenerateSeries(site, table.site_ids[site] + " @ " + to_string(res));
        }
        criteria.push_back(Criterion::pearson(threshold, to_string(res)));
    }
    return criteria;
}

} // namespace pretopo
