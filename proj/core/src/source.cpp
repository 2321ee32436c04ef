#include "mssd/source.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "mssd/errors.hpp"

namespace mssd {

GeoPoint point_of(const Location& l) {
    if (const auto* p = std::get_if<GeoPoint>(&l.region)) return *p;
    return polygon_centroid(std::get<GeoPolygon>(l.region));
}

std::string location_key(const Location& l) { return l.source_name + "\x1f" + l.id; }

const char* to_string(SamplingMode m) {
    switch (m) {
        case SamplingMode::UniformRandom: return "uniform-random";
        case SamplingMode::NearestFirst: return "nearest-first";
        case SamplingMode::FixedSubset: return "fixed-subset";
    }
    return "unknown";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
    if (s == "uniform-random") return SamplingMode::UniformRandom;
    if (s == "nearest-first") return SamplingMode::NearestFirst;
    if (s == "fixed-subset") return SamplingMode::FixedSubset;
    throw std::invalid_argument("unknown sampling mode: " + s);
}

std::vector<SourceProfile> preset_profiles() {
    constexpr std::int64_t kMinute = 60, kHour = 3600, kDay = 86400;
    return {
        {"krak", 100, 10'000, 30 * kDay, true, SamplingMode::NearestFirst},
        {"yelp", 50, 5'000, kDay, true, SamplingMode::NearestFirst},
        {"google-places", 20, 1'000, kDay, true, SamplingMode::NearestFirst},
        {"foursquare", 50, 550, kHour, false, SamplingMode::NearestFirst},
        {"twitter", 100, 180, 15 * kMinute, false, SamplingMode::NearestFirst},
        {"flickr", 500, 3'600, kHour, false, SamplingMode::NearestFirst},
    };
}

SourceProfile preset_profile(const std::string& name) {
    for (SourceProfile& p : preset_profiles()) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown preset profile: " + name);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

SimulatedSource::SimulatedSource(SourceProfile profile, std::vector<Location> universe,
                                 std::uint64_t rng_seed)
    : profile_(std::move(profile)), rng_seed_(rng_seed) {
    if (profile_.max_result_size < 1) throw std::invalid_argument("max_result_size must be >= 1");

    // Canonical order by id makes responses independent of ingestion order.
    std::sort(universe.begin(), universe.end(),
              [](const Location& a, const Location& b) { return a.id < b.id; });
    std::unordered_set<std::string> seen;
    seen.reserve(universe.size());
    for (Location& l : universe) {
        if (l.id.empty()) throw std::invalid_argument("universe location with empty id");
        if (!seen.insert(l.id).second) {
            throw std::invalid_argument("duplicate location id in universe: " + l.id);
        }
        l.source_name = profile_.name;
        digest_ ^= splitmix64(fnv1a64(l.id));
    }
    digest_ ^= splitmix64(universe.size());

    std::vector<GeoPoint> pts;
    pts.reserve(universe.size());
    for (const Location& l : universe) pts.push_back(point_of(l));
    grid_ = PointGrid(std::move(pts));

    universe_ = std::make_shared<const std::vector<Location>>(std::move(universe));
}

BudgetLedger SimulatedSource::make_ledger(bool strict,
                                          std::optional<std::uint64_t> total_cap) const {
    return BudgetLedger(profile_.name, profile_.bandwidth_limit, profile_.bandwidth_window_s,
                        strict, total_cap);
}

std::vector<Location> SimulatedSource::respond(const GeoPoint& p, double radius_m,
                                               std::uint64_t call_index) const {
    const std::vector<Location>& uni = *universe_;
    std::vector<std::size_t> in_circle = grid_.indices_in_circle(p, radius_m);

    if (in_circle.empty()) {
        if (profile_.supplemental_results && !uni.empty()) {
            const auto nn = grid_.nearest(p, /*exclude_equal_coords=*/false);
            Location supp = uni[nn->index];
            supp.supplemental = true;
            return {supp};
        }
        return {};
    }

    const std::size_t cap = profile_.max_result_size;
    if (in_circle.size() > cap) {
        switch (profile_.sampling_mode) {
            case SamplingMode::NearestFirst: {
                std::sort(in_circle.begin(), in_circle.end(), [&](std::size_t a, std::size_t b) {
                    const double da = haversine(p, point_of(uni[a]));
                    const double db = haversine(p, point_of(uni[b]));
                    if (da != db) return da < db;
                    return uni[a].id < uni[b].id;
                });
                in_circle.resize(cap);
                break;
            }
            case SamplingMode::FixedSubset: {
                std::sort(in_circle.begin(), in_circle.end(), [&](std::size_t a, std::size_t b) {
                    const std::uint64_t ha = splitmix64(fnv1a64(uni[a].id) ^ rng_seed_);
                    const std::uint64_t hb = splitmix64(fnv1a64(uni[b].id) ^ rng_seed_);
                    if (ha != hb) return ha < hb;
                    return uni[a].id < uni[b].id;
                });
                in_circle.resize(cap);
                break;
            }
            case SamplingMode::UniformRandom: {
                std::mt19937_64 rng(splitmix64(rng_seed_ ^ splitmix64(call_index)));
                for (std::size_t i = 0; i < cap; ++i) {
                    std::uniform_int_distribution<std::size_t> pick(i, in_circle.size() - 1);
                    std::swap(in_circle[i], in_circle[pick(rng)]);
                }
                in_circle.resize(cap);
                break;
            }
        }
        std::sort(in_circle.begin(), in_circle.end());
    }

    std::vector<Location> out;
    out.reserve(in_circle.size());
    for (std::size_t i : in_circle) out.push_back(uni[i]);
    return out;
}

std::vector<Location> SimulatedSource::api_query(const GeoPoint& p, double radius_m,
                                                 BudgetLedger& ledger) const {
    const std::uint64_t call_index = ledger.request_count();
    std::vector<Location> result = respond(p, radius_m, call_index);
    ledger.record_request(p, radius_m, static_cast<std::uint32_t>(result.size()));
    return result;
}

std::vector<Location> SimulatedSource::peek_query(const GeoPoint& p, double radius_m) const {
    if (profile_.sampling_mode == SamplingMode::UniformRandom) {
        throw std::logic_error("peek_query requires a deterministic sampling mode");
    }
    return respond(p, radius_m, 0);
}

}  // namespace mssd
