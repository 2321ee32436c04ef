#include "mssd/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mssd {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

PointGrid::PointGrid(std::vector<GeoPoint> points, double cell_size_m)
    : points_(std::move(points)), cell_m_(cell_size_m) {
    if (points_.empty()) return;

    double min_lat = points_[0].lat, min_lon = points_[0].lon;
    for (const GeoPoint& p : points_) {
        min_lat = std::min(min_lat, p.lat);
        min_lon = std::min(min_lon, p.lon);
    }
    origin_ = GeoPoint{min_lat, min_lon};

    row_lo_ = col_lo_ = std::numeric_limits<std::int64_t>::max();
    row_hi_ = col_hi_ = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const GridCell c = local_grid_cell(points_[i], origin_, cell_m_);
        buckets_[key(c.row, c.col)].push_back(static_cast<std::uint32_t>(i));
        row_lo_ = std::min(row_lo_, c.row);
        row_hi_ = std::max(row_hi_, c.row);
        col_lo_ = std::min(col_lo_, c.col);
        col_hi_ = std::max(col_hi_, c.col);
    }
}

const std::vector<std::uint32_t>* PointGrid::bucket(std::int64_t row, std::int64_t col) const {
    auto it = buckets_.find(key(row, col));
    return it == buckets_.end() ? nullptr : &it->second;
}

PointGrid::CellRange PointGrid::circle_cell_window(const GeoPoint& center, double radius_m) const {
    // Latitude reach is exact: haversine >= R * |d_lat|.
    const double dlat_deg = (radius_m / kEarthRadiusM) / kDegToRad;

    // Longitude reach from haversine >= (2/pi) * R * d_lon * sqrt(cos(lat1) cos(lat2)),
    // with cos(lat2) bounded below over the latitude band the circle can touch.
    const double abs_lat = std::abs(center.lat);
    const double band_lat = std::min(90.0, abs_lat + dlat_deg);
    const double cos1 = std::cos(center.lat * kDegToRad);
    const double cos2 = std::cos(band_lat * kDegToRad);

    double lat_lo = center.lat - dlat_deg;
    double lat_hi = center.lat + dlat_deg;
    double lon_lo, lon_hi;
    if (cos1 <= 0.0 || cos2 <= 0.0) {
        lon_lo = -180.0;
        lon_hi = 180.0;
    } else {
        const double dlon_rad = radius_m * M_PI / (2.0 * kEarthRadiusM * std::sqrt(cos1 * cos2));
        const double dlon_deg = dlon_rad / kDegToRad;
        lon_lo = std::max(-180.0, center.lon - dlon_deg);
        lon_hi = std::min(180.0, center.lon + dlon_deg);
    }

    const GridCell lo = local_grid_cell(GeoPoint{lat_lo, lon_lo}, origin_, cell_m_);
    const GridCell hi = local_grid_cell(GeoPoint{lat_hi, lon_hi}, origin_, cell_m_);

    CellRange r;
    r.row_lo = std::max(row_lo_, lo.row - 1);
    r.row_hi = std::min(row_hi_, hi.row + 1);
    r.col_lo = std::max(col_lo_, lo.col - 1);
    r.col_hi = std::min(col_hi_, hi.col + 1);
    return r;
}

std::vector<std::size_t> PointGrid::indices_in_circle(const GeoPoint& center,
                                                      double radius_m) const {
    std::vector<std::size_t> out;
    if (points_.empty()) return out;

    const CellRange w = circle_cell_window(center, radius_m);
    if (w.row_lo > w.row_hi || w.col_lo > w.col_hi) return out;

    const auto consider = [&](const std::vector<std::uint32_t>& bucket_idx) {
        for (std::uint32_t i : bucket_idx) {
            if (haversine(center, points_[i]) <= radius_m) out.push_back(i);
        }
    };

    const std::uint64_t window_cells = static_cast<std::uint64_t>(w.row_hi - w.row_lo + 1) *
                                       static_cast<std::uint64_t>(w.col_hi - w.col_lo + 1);
    if (window_cells > buckets_.size()) {
        for (const auto& [k, bucket_idx] : buckets_) {
            const auto row = static_cast<std::int64_t>(static_cast<std::int32_t>(k >> 32));
            const auto col = static_cast<std::int64_t>(static_cast<std::int32_t>(k & 0xffffffffu));
            if (row < w.row_lo || row > w.row_hi || col < w.col_lo || col > w.col_hi) continue;
            consider(bucket_idx);
        }
    } else {
        for (std::int64_t row = w.row_lo; row <= w.row_hi; ++row) {
            for (std::int64_t col = w.col_lo; col <= w.col_hi; ++col) {
                if (const auto* b = bucket(row, col)) consider(*b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PointGrid::count_in_circle(const GeoPoint& center, double radius_m) const {
    if (points_.empty()) return 0;

    const CellRange w = circle_cell_window(center, radius_m);
    if (w.row_lo > w.row_hi || w.col_lo > w.col_hi) return 0;

    std::size_t n = 0;
    const auto consider = [&](const std::vector<std::uint32_t>& bucket_idx) {
        for (std::uint32_t i : bucket_idx) {
            if (haversine(center, points_[i]) <= radius_m) ++n;
        }
    };

    const std::uint64_t window_cells = static_cast<std::uint64_t>(w.row_hi - w.row_lo + 1) *
                                       static_cast<std::uint64_t>(w.col_hi - w.col_lo + 1);
    if (window_cells > buckets_.size()) {
        for (const auto& [k, bucket_idx] : buckets_) {
            const auto row = static_cast<std::int64_t>(static_cast<std::int32_t>(k >> 32));
            const auto col = static_cast<std::int64_t>(static_cast<std::int32_t>(k & 0xffffffffu));
            if (row < w.row_lo || row > w.row_hi || col < w.col_lo || col > w.col_hi) continue;
            consider(bucket_idx);
        }
    } else {
        for (std::int64_t row = w.row_lo; row <= w.row_hi; ++row) {
            for (std::int64_t col = w.col_lo; col <= w.col_hi; ++col) {
                if (const auto* b = bucket(row, col)) consider(*b);
            }
        }
    }
    return n;
}

std::optional<PointGrid::Neighbor> PointGrid::nearest(const GeoPoint& p,
                                                      bool exclude_equal_coords) const {
    if (points_.empty()) return std::nullopt;

    const GridCell start = local_grid_cell(p, origin_, cell_m_);
    const std::int64_t max_ring =
        std::max({std::abs(start.row - row_lo_), std::abs(start.row - row_hi_),
                  std::abs(start.col - col_lo_), std::abs(start.col - col_hi_)});

    // Phase 1: expand rings until some admissible candidate turns up. The
    // candidate seeds a radius for an exact, provably complete range query.
    double seed_d = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
        const auto scan = [&](std::int64_t row, std::int64_t col) {
            if (const auto* b = bucket(row, col)) {
                for (std::uint32_t i : *b) {
                    if (exclude_equal_coords && points_[i] == p) continue;
                    seed_d = std::min(seed_d, haversine(p, points_[i]));
                }
            }
        };
        if (ring == 0) {
            scan(start.row, start.col);
        } else {
            for (std::int64_t col = start.col - ring; col <= start.col + ring; ++col) {
                scan(start.row - ring, col);
                scan(start.row + ring, col);
            }
            for (std::int64_t row = start.row - ring + 1; row <= start.row + ring - 1; ++row) {
                scan(row, start.col - ring);
                scan(row, start.col + ring);
            }
        }
        if (std::isfinite(seed_d)) break;
    }
    if (!std::isfinite(seed_d)) return std::nullopt;

    // Phase 2: exact minimum over everything within the seed distance.
    Neighbor best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i : indices_in_circle(p, seed_d)) {
        if (exclude_equal_coords && points_[i] == p) continue;
        const double d = haversine(p, points_[i]);
        if (d < best.distance_m) best = Neighbor{i, d};
    }
    if (!std::isfinite(best.distance_m)) return std::nullopt;
    return best;
}

}  // namespace mssd
