#pragma once

#include "pretopo/similarity.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pretopo {

struct Sample {
    std::int64_t timestamp = 0; // seconds since the Unix epoch, UTC
    double value = 0.0;         // kWh, >= 0
};

struct RawSeries {
    std::string site_id;
    std::vector<Sample> samples; // strictly increasing timestamps
};

// Input schema: header `site_id,timestamp,value`, one sample per row.
// Timestamps are integer epoch seconds or ISO-8601
// (YYYY-MM-DD[ T]HH:MM[:SS][Z|+HH:MM|-HH:MM]). Rows of one site must appear
// with strictly increasing timestamps; sites may interleave. The result is
// ordered by site id.
std::vector<RawSeries> load_csv(std::istream& in);
std::vector<RawSeries> load_csv_file(const std::string& path);

std::int64_t parse_timestamp(std::string_view text, std::size_t line = 0);

enum class Resolution { HalfHour, Day, Week, Month };

const char* to_string(Resolution r);
Resolution parse_resolution(std::string_view name);
inline const std::vector<Resolution> all_resolutions{Resolution::HalfHour, Resolution::Day, Resolution::Week,
                                                     Resolution::Month};

// UTC bucket grid: half-hours and days from the epoch, ISO weeks starting
// Monday 00:00, calendar months.
std::int64_t bucket_index(std::int64_t timestamp, Resolution r);

// Inclusive bounds [start, end].
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;

    std::int64_t length() const noexcept { return end - start; }
    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

enum class Aggregate { Mean, Sum };

// Aggregates the samples inside `window` into every bucket touched by the
// window. Empty interior buckets are linearly interpolated between the
// neighbouring filled buckets. Returns nullopt when the first or last
// bucket is empty; throws DataError when no sample falls in the window.
std::optional<std::vector<double>> resample(const RawSeries& series, Resolution resolution, TimeWindow window,
                                            Aggregate aggregate = Aggregate::Mean);

struct WindowSelection {
    TimeWindow window;
    std::vector<std::size_t> kept; // indices into the input, ascending
    std::vector<std::string> dropped_reasons;
};

// Intersection of the sites' coverage. Sites whose coverage pulls the
// window below 80% of the median coverage are dropped, one at a time,
// until the window is long enough.
WindowSelection common_window(const std::vector<RawSeries>& sites);

struct ResampledTable {
    std::vector<std::string> site_ids;
    std::map<Resolution, std::vector<std::vector<double>>> series;
    TimeWindow window;
    std::vector<std::string> warnings; // dropped sites and why

    // One series channel per resolution, named by to_string(resolution).
    FeatureTable to_feature_table() const;
};

ResampledTable resample_table(const std::vector<RawSeries>& sites,
                              const std::vector<Resolution>& resolutions = all_resolutions,
                              Aggregate aggregate = Aggregate::Mean);

// One Pearson ball per listed resolution, reading that resolution's channel.
// Throws DegenerateSeries naming the first constant site/resolution.
std::vector<Criterion> build_resolution_criteria(const ResampledTable& table,
                                                 const std::map<Resolution, double>& rho);

} // namespace pretopo
