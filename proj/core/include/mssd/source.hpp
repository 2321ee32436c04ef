#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mssd/budget.hpp"
#include "mssd/location.hpp"
#include "mssd/point_grid.hpp"

namespace mssd {

// How a simulated API picks M_S results when a circle holds more than M_S
// locations. Real services rarely document this; the three modes cover the
// plausible behaviors while keeping property tests deterministic.
enum class SamplingMode {
    UniformRandom,  // fresh sample per call, reseeded from (rng_seed, call index)
    NearestFirst,   // the M_S closest to the query point
    FixedSubset,    // stable id-hash order; the same region always yields the same sample
};

const char* to_string(SamplingMode m);
SamplingMode sampling_mode_from_string(const std::string& s);

struct SourceProfile {
    std::string name;
    std::uint32_t max_result_size = 50;       // M_S
    std::uint64_t bandwidth_limit = 1000;     // requests per window
    std::int64_t bandwidth_window_s = 86400;  // window length, virtual seconds
    bool supplemental_results = false;
    SamplingMode sampling_mode = SamplingMode::NearestFirst;
};

// The six profiles the experiments run against. Google Places uses its former
// 1000-requests-per-day default. Flickr's page size is the 500 cap (some
// endpoints page at 250; the preset keeps the higher documented cap).
std::vector<SourceProfile> preset_profiles();

// Lookup by name among the presets; throws std::invalid_argument if unknown.
SourceProfile preset_profile(const std::string& name);

// An offline source: the complete location set L(S) plus sampling semantics.
// Immutable after construction; api_query mutates only the caller's ledger.
class SimulatedSource {
public:
    SimulatedSource(SourceProfile profile, std::vector<Location> universe,
                    std::uint64_t rng_seed);

    const SourceProfile& profile() const { return profile_; }
    std::uint64_t rng_seed() const { return rng_seed_; }
    const std::vector<Location>& universe() const { return *universe_; }
    std::size_t universe_size() const { return universe_->size(); }

    // Order-independent fingerprint of the universe contents, used to detect
    // cross-universe comparisons.
    std::uint64_t universe_digest() const { return digest_; }

    // One API call: filters the universe to Circle(p, r), samples down to
    // M_S per the profile's mode, and records exactly one ledger request.
    // With supplemental_results, an empty circle yields the single nearest
    // universe location flagged supplemental.
    std::vector<Location> api_query(const GeoPoint& p, double radius_m,
                                    BudgetLedger& ledger) const;

    // Same response api_query would produce, without touching any ledger.
    // Only defined for deterministic sampling modes.
    std::vector<Location> peek_query(const GeoPoint& p, double radius_m) const;

    // Fresh ledger configured from the profile's bandwidth row.
    BudgetLedger make_ledger(bool strict = false,
                             std::optional<std::uint64_t> total_cap = std::nullopt) const;

private:
    std::vector<Location> respond(const GeoPoint& p, double radius_m,
                                  std::uint64_t call_index) const;

    SourceProfile profile_;
    std::shared_ptr<const std::vector<Location>> universe_;
    std::uint64_t rng_seed_ = 0;
    std::uint64_t digest_ = 0;
    PointGrid grid_;
};

}  // namespace mssd
