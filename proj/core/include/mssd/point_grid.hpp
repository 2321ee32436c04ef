#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mssd/geo.hpp"

namespace mssd {

// Uniform-grid bucketing of geo points in a local equirectangular plane.
// Range queries enumerate a candidate cell window derived from a provable
// lat/lon bounding box of the circle, so the exact haversine filter never
// misses a point regardless of projection distortion.
class PointGrid {
public:
    PointGrid() = default;
    explicit PointGrid(std::vector<GeoPoint> points, double cell_size_m = 1000.0);

    const std::vector<GeoPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double cell_size_m() const { return cell_m_; }

    // Ascending indices of all points with haversine(center, p) <= radius_m.
    std::vector<std::size_t> indices_in_circle(const GeoPoint& center, double radius_m) const;
    std::size_t count_in_circle(const GeoPoint& center, double radius_m) const;

    struct Neighbor {
        std::size_t index = 0;
        double distance_m = 0.0;
    };

    // Nearest indexed point to p. With exclude_equal_coords, points whose
    // coordinates equal p exactly are skipped. Ties broken by lowest index.
    std::optional<Neighbor> nearest(const GeoPoint& p, bool exclude_equal_coords) const;

private:
    struct CellRange {
        std::int64_t row_lo = 0, row_hi = -1;
        std::int64_t col_lo = 0, col_hi = -1;
    };

    CellRange circle_cell_window(const GeoPoint& center, double radius_m) const;
    const std::vector<std::uint32_t>* bucket(std::int64_t row, std::int64_t col) const;

    static std::uint64_t key(std::int64_t row, std::int64_t col) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(col));
    }

    std::vector<GeoPoint> points_;
    double cell_m_ = 1000.0;
    GeoPoint origin_{};
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
    std::int64_t row_lo_ = 0, row_hi_ = -1, col_lo_ = 0, col_hi_ = -1;
};

}  // namespace mssd
