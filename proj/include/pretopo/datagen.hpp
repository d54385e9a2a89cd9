#pragma once

#include "pretopo/ingest.hpp"
#include "pretopo/similarity.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pretopo {

// All generators draw from one SplitMix64 stream seeded with rng_seed and
// consume it in a fixed order, so a spec reproduces bit-identical output.

struct PointGroup {
    std::size_t count = 1;
    std::array<double, 2> center{0.0, 0.0};
    double dispersion = 1.0; // Gaussian sigma per axis
    double size_lo = 1.0;
    double size_hi = 1.0;
};

struct PointGenSpec {
    std::vector<PointGroup> groups;
    std::uint64_t rng_seed = 0;
};

struct Waveform {
    enum class Kind { Sinusoid, Square, Trend };

    Kind kind = Kind::Sinusoid;
    double period = 1.0;    // Sinusoid, Square (samples)
    double phase = 0.0;     // Sinusoid: radians; Square: shift in samples
    double amplitude = 1.0; // Sinusoid, Square
    double offset = 0.0;    // Sinusoid, Square
    double duty = 0.5;      // Square: fraction of the period at +amplitude
    double slope = 0.0;     // Trend
    double intercept = 0.0; // Trend

    double at(std::size_t t) const;
};

struct SeriesCluster {
    std::size_t count = 1;
    std::size_t length = 2;
    Waveform shape;
    double noise = 0.0;
};

struct SeriesGenSpec {
    std::vector<SeriesCluster> clusters;
    std::uint64_t rng_seed = 0;
};

// Half-hourly consumption of synthetic sites with three daily shapes:
// two peaks (morning and evening), a half-day plateau, and a flat profile.
// Each shape carries its own yearly modulation. Site i has shape i % 3.
struct SiteGenSpec {
    std::size_t sites = 30;
    std::size_t days = 365;
    std::int64_t start = 1672531200; // 2023-01-01T00:00:00Z
    double noise = 0.2;
    std::uint64_t rng_seed = 0;
};

struct GeneratedTable {
    FeatureTable table;
    std::vector<std::int64_t> labels;
};

struct GeneratedSites {
    std::vector<RawSeries> sites;
    std::vector<std::int64_t> labels; // aligned with `sites`
};

GeneratedTable generate_points(const PointGenSpec& spec);
GeneratedTable generate_series(const SeriesGenSpec& spec);
GeneratedSites generate_sites(const SiteGenSpec& spec);

using GeneratorSpec = std::variant<PointGenSpec, SeriesGenSpec, SiteGenSpec>;

// {"schema_version": 1, "kind": "points" | "series" | "sites", "rng_seed": ..., ...}
// See README for the per-kind fields. Missing rng_seed falls back to
// `default_seed`.
GeneratorSpec parse_generator_spec(std::string_view json_text, std::uint64_t default_seed = 0);

// Labels CSV: header `item_id,label`.
void write_labels_csv(std::ostream& out, const std::vector<std::string>& ids, const std::vector<std::int64_t>& labels);
// Consumption CSV in the ingest schema, epoch-second timestamps.
void write_consumption_csv(std::ostream& out, const std::vector<RawSeries>& sites);

} // namespace pretopo
