#include "mssd/seed_index.hpp"

#include <algorithm>

namespace mssd {

SeedSet::SeedSet(std::vector<GeoPoint> points) {
    std::sort(points.begin(), points.end(), [](const GeoPoint& a, const GeoPoint& b) {
        if (a.lat != b.lat) return a.lat < b.lat;
        return a.lon < b.lon;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    grid_ = PointGrid(std::move(points));
}

std::size_t SeedSet::count_in_circle(const QueryCircle& c) const {
    return grid_.count_in_circle(c.center, c.radius_m);
}

std::optional<SeedSet::NearestNeighbor> SeedSet::nearest_distinct(const GeoPoint& p) const {
    const auto nn = grid_.nearest(p, /*exclude_equal_coords=*/true);
    if (!nn) return std::nullopt;
    return NearestNeighbor{grid_.points()[nn->index], nn->distance_m};
}

}  // namespace mssd
