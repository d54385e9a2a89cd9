#include "pretopo/datagen.hpp"

#include "pretopo/csv.hpp"
#include "pretopo/errors.hpp"
#include "pretopo/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace pretopo {

double Waveform::at(std::size_t t) const
{
    const double x = static_cast<double>(t);
    switch (kind) {
    case Kind::Sinusoid: return offset + amplitude * std::sin(2.0 * std::numbers::pi * x / period + phase);
    case Kind::Square: {
        const double pos = std::fmod(x + phase, period);
        const double wrapped = pos < 0 ? pos + period : pos;
        return offset + (wrapped < duty * period ? amplitude : -amplitude);
    }
    case Kind::Trend: return intercept + slope * x;
    }
    return 0.0;
}

GeneratedTable generate_points(const PointGenSpec& spec)
{
    if (spec.groups.empty())
        throw ConfigError("point spec needs at least one group");
    for (const auto& g : spec.groups) {
        if (g.count < 1)
            throw ConfigError("point group count must be >= 1");
        if (!(g.dispersion > 0.0))
            throw ConfigError("point group dispersion must be > 0");
        if (!(g.size_lo <= g.size_hi) || g.size_lo < 0.0)
            throw ConfigError("point group size range must satisfy 0 <= lo <= hi");
    }
    SplitMix64 rng(spec.rng_seed);
    std::vector<std::string> ids;
    std::vector<std::vector<double>> positions;
    std::vector<double> sizes;
    GeneratedTable out;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const auto& group = spec.groups[g];
        for (std::size_t i = 0; i < group.count; ++i) {
            const double x = rng.normal(group.center[0], group.dispersion);
            const double y = rng.normal(group.center[1], group.dispersion);
            const double size = rng.uniform(group.size_lo, group.size_hi);
            ids.push_back(std::to_string(ids.size()));
            positions.push_back({x, y});
            sizes.push_back(size);
            out.labels.push_back(static_cast<std::int64_t>(g));
        }
    }
    out.table = FeatureTable(std::move(ids));
    out.table.set_positions(std::move(positions));
    out.table.set_sizes(std::move(sizes));
    return out;
}

GeneratedTable generate_series(const SeriesGenSpec& spec)
{
    if (spec.clusters.empty())
        throw ConfigError("series spec needs at least one cluster");
    const auto length = spec.clusters.front().length;
    for (const auto& c : spec.clusters) {
        if (c.count < 1)
            throw ConfigError("series cluster count must be >= 1");
        if (c.length != length)
            throw ConfigError("all series clusters must share one length");
        if (c.length < 2)
            throw ConfigError("series length must be >= 2");
        if (!(c.noise >= 0.0))
            throw ConfigError("series noise must be >= 0");
        if (c.shape.kind != Waveform::Kind::Trend && !(c.shape.period > 0.0))
            throw ConfigError("waveform period must be > 0");
        if (c.shape.kind == Waveform::Kind::Square && !(c.shape.duty > 0.0 && c.shape.duty < 1.0))
            throw ConfigError("square waveform duty must lie in (0, 1)");
    }
    SplitMix64 rng(spec.rng_seed);
    std::vector<std::string> ids;
    std::vector<std::vector<double>> series;
    GeneratedTable out;
    for (std::size_t k = 0; k < spec.clusters.size(); ++k) {
        const auto& c = spec.clusters[k];
        for (std::size_t i = 0; i < c.count; ++i) {
            std::vector<double> s(c.length);
            for (std::size_t t = 0; t < c.length; ++t)
                s[t] = c.shape.at(t) + c.noise * rng.normal();
            ids.push_back(std::to_string(ids.size()));
            series.push_back(std::move(s));
            out.labels.push_back(static_cast<std::int64_t>(k));
        }
    }
    out.table = FeatureTable(std::move(ids));
    out.table.set_series(std::move(series));
    return out;
}

namespace {

double site_shape(std::size_t shape, double hour)
{
    switch (shape) {
    case 0: return 1.0 + 2.0 * std::exp(-0.5 * (hour - 8.0) * (hour - 8.0)) +
                   2.0 * std::exp(-0.5 * (hour - 19.0) * (hour - 19.0));
    case 1: return hour >= 7.0 && hour < 19.0 ? 3.0 : 1.0;
    default: return 2.0;
    }
}

std::string site_name(std::size_t i, std::size_t total)
{
    const auto width = std::max<std::size_t>(3, std::to_string(total > 0 ? total - 1 : 0).size());
    auto s = std::to_string(i);
    return "site_" + std::string(width - std::min(width, s.size()), '0') + s;
}

} // namespace

GeneratedSites generate_sites(const SiteGenSpec& spec)
{
    if (spec.days < 1)
        throw ConfigError("site spec needs at least one day");
    if (!(spec.noise >= 0.0))
        throw ConfigError("site noise must be >= 0");
    constexpr std::array<double, 3> seasonal_phase{0.0, 120.0, 240.0};
    constexpr std::size_t steps_per_day = 48;
    SplitMix64 rng(spec.rng_seed);
    GeneratedSites out;
    for (std::size_t i = 0; i < spec.sites; ++i) {
        const std::size_t shape = i % 3;
        const double level = rng.uniform(0.5, 2.0);
        RawSeries site{site_name(i, spec.sites), {}};
        site.samples.reserve(spec.days * steps_per_day);
        for (std::size_t step = 0; step < spec.days * steps_per_day; ++step) {
            const double hour = static_cast<double>(step % steps_per_day) / 2.0;
            const double day = static_cast<double>(step / steps_per_day);
            const double seasonal = 1.0 + 0.3 * std::cos(2.0 * std::numbers::pi * (day - seasonal_phase[shape]) / 365.0);
            const double v = level * (site_shape(shape, hour) * seasonal + spec.noise * rng.normal());
            site.samples.push_back({spec.start + static_cast<std::int64_t>(step) * 1800, std::max(0.0, v)});
        }
        out.sites.push_back(std::move(site));
        out.labels.push_back(static_cast<std::int64_t>(shape));
    }
    return out;
}

namespace {

using nlohmann::json;

Waveform parse_waveform(const json& j)
{
    Waveform w;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "sinusoid") {
        w.kind = Waveform::Kind::Sinusoid;
        w.period = j.at("period").get<double>();
        w.phase = j.value("phase", 0.0);
        w.amplitude = j.value("amplitude", 1.0);
        w.offset = j.value("offset", 0.0);
    } else if (kind == "square") {
        w.kind = Waveform::Kind::Square;
        w.period = j.at("period").get<double>();
        w.phase = j.value("phase", 0.0);
        w.amplitude = j.value("amplitude", 1.0);
        w.offset = j.value("offset", 0.0);
        w.duty = j.value("duty", 0.5);
    } else if (kind == "trend") {
        w.kind = Waveform::Kind::Trend;
        w.slope = j.at("slope").get<double>();
        w.intercept = j.value("intercept", 0.0);
    } else {
        throw ConfigError("unknown waveform kind '" + kind + "'");
    }
    return w;
}

} // namespace

GeneratorSpec parse_generator_spec(std::string_view text, std::uint64_t default_seed)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("generator spec: ") + e.what());
    }
    try {
        if (!doc.is_object())
            throw ConfigError("generator spec must be a JSON object");
        if (doc.value("schema_version", 1) != 1)
            throw ConfigError("unsupported generator schema_version");
        const auto seed = doc.value("rng_seed", default_seed);
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "points") {
            PointGenSpec spec;
            spec.rng_seed = seed;
            for (const auto& g : doc.at("groups")) {
                PointGroup group;
                group.count = g.at("count").get<std::size_t>();
                const auto c = g.at("center").get<std::vector<double>>();
                if (c.size() != 2)
                    throw ConfigError("point group center must have two coordinates");
                group.center = {c[0], c[1]};
                group.dispersion = g.at("dispersion").get<double>();
                const auto r = g.at("size_range").get<std::vector<double>>();
                if (r.size() != 2)
                    throw ConfigError("size_range must be [lo, hi]");
                group.size_lo = r[0];
                group.size_hi = r[1];
                spec.groups.push_back(group);
            }
            return spec;
        }
        if (kind == "series") {
            SeriesGenSpec spec;
            spec.rng_seed = seed;
            for (const auto& c : doc.at("clusters")) {
                SeriesCluster cluster;
                cluster.count = c.at("count").get<std::size_t>();
                cluster.length = c.at("length").get<std::size_t>();
                cluster.shape = parse_waveform(c.at("shape"));
                cluster.noise = c.value("noise", 0.0);
                spec.clusters.push_back(cluster);
            }
            return spec;
        }
        if (kind == "sites") {
            SiteGenSpec spec;
            spec.rng_seed = seed;
            spec.sites = doc.value("sites", spec.sites);
            spec.days = doc.value("days", spec.days);
            spec.noise = doc.value("noise", spec.noise);
            if (doc.contains("start")) {
                const auto& s = doc.at("start");
                spec.start = s.is_string() ? parse_timestamp(s.get<std::string>()) : s.get<std::int64_t>();
            }
            return spec;
        }
        throw ConfigError("unknown generator kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("generator spec: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("generator spec: ") + e.what());
    }
}

void write_labels_csv(std::ostream& out, const std::vector<std::string>& ids, const std::vector<std::int64_t>& labels)
{
    if (ids.size() != labels.size())
        throw ContractViolation("labels and ids differ in length");
    out << "item_id,label\n";
    for (std::size_t i = 0; i < ids.size(); ++i)
        out << ids[i] << ',' << labels[i] << '\n';
}

void write_consumption_csv(std::ostream& out, const std::vector<RawSeries>& sites)
{
    out << "site_id,timestamp,value\n";
    for (const auto& site : sites)
        for (const auto& s : site.samples)
            out << site.site_id << ',' << s.timestamp << ',' << csv::format_double(s.value) << '\n';
}

} // namespace pretopo
