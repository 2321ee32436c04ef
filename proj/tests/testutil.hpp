#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mssd/location.hpp"
#include "mssd/source.hpp"

namespace testutil {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline mssd::GeoPoint random_point(std::mt19937_64& rng, double lat_lo, double lat_hi,
                                   double lon_lo, double lon_hi) {
    return mssd::GeoPoint{uniform(rng, lat_lo, lat_hi), uniform(rng, lon_lo, lon_hi)};
}

// Independent distance oracle: spherical law of cosines.
inline double law_of_cosines_distance(const mssd::GeoPoint& a, const mssd::GeoPoint& b) {
    const double d2r = M_PI / 180.0;
    const double c = std::sin(a.lat * d2r) * std::sin(b.lat * d2r) +
                     std::cos(a.lat * d2r) * std::cos(b.lat * d2r) *
                         std::cos((b.lon - a.lon) * d2r);
    return mssd::kEarthRadiusM * std::acos(std::max(-1.0, std::min(1.0, c)));
}

// Clustered point cloud: a few Gaussian blobs plus uniform background.
inline std::vector<mssd::GeoPoint> clustered_points(std::mt19937_64& rng, std::size_t count,
                                                    std::size_t blobs, double lat0, double lon0,
                                                    double extent_deg, double sigma_deg,
                                                    double background_share = 0.1) {
    std::vector<mssd::GeoPoint> centers;
    for (std::size_t b = 0; b < blobs; ++b) {
        centers.push_back(random_point(rng, lat0, lat0 + extent_deg, lon0, lon0 + extent_deg));
    }
    std::normal_distribution<double> jitter(0.0, sigma_deg);
    std::vector<mssd::GeoPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (uniform(rng, 0.0, 1.0) < background_share || centers.empty()) {
            out.push_back(random_point(rng, lat0, lat0 + extent_deg, lon0, lon0 + extent_deg));
        } else {
            const auto& c = centers[rng() % centers.size()];
            out.push_back(mssd::GeoPoint{c.lat + jitter(rng), c.lon + jitter(rng)});
        }
    }
    return out;
}

inline std::vector<mssd::Location> as_locations(const std::vector<mssd::GeoPoint>& pts,
                                                const std::string& prefix = "loc-") {
    std::vector<mssd::Location> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        mssd::Location l;
        l.id = prefix + std::to_string(i);
        l.region = pts[i];
        out.push_back(std::move(l));
    }
    return out;
}

inline mssd::SourceProfile test_profile(const std::string& name, std::uint32_t max_results,
                                        mssd::SamplingMode mode = mssd::SamplingMode::NearestFirst,
                                        bool supplemental = false) {
    mssd::SourceProfile p;
    p.name = name;
    p.max_result_size = max_results;
    p.bandwidth_limit = 1'000'000;  // effectively unlimited for unit tests
    p.bandwidth_window_s = 3600;
    p.supplemental_results = supplemental;
    p.sampling_mode = mode;
    return p;
}

}  // namespace testutil
