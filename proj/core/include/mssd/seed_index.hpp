#pragma once

#include <optional>
#include <vector>

#include "mssd/point_grid.hpp"

namespace mssd {

// The distinct points of the seed source, indexed for the range counts the
// density strategy needs and the nearest-distinct-neighbor lookups the NN
// strategy needs. Exact duplicate coordinates collapse at construction;
// near-duplicates are kept.
class SeedSet {
public:
    explicit SeedSet(std::vector<GeoPoint> points);

    // Distinct points in canonical (lat, lon) order.
    const std::vector<GeoPoint>& points() const { return grid_.points(); }
    std::size_t size() const { return grid_.size(); }

    // |{q in P : q in circle}|; counts the center itself when it is a seed.
    std::size_t count_in_circle(const QueryCircle& c) const;

    struct NearestNeighbor {
        GeoPoint point;
        double distance_m = 0.0;
    };

    // Nearest seed point with coordinates different from p, or nullopt when
    // the set holds no other coordinate.
    std::optional<NearestNeighbor> nearest_distinct(const GeoPoint& p) const;

private:
    PointGrid grid_;
};

}  // namespace mssd
