#include "mssd/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mssd/errors.hpp"

namespace mssd {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

}  // namespace

bool is_valid(const GeoPoint& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
           p.lon >= -180.0 && p.lon <= 180.0;
}

bool is_valid(const GeoPolygon& pg) {
    if (pg.vertices.size() < 3) return false;
    return std::all_of(pg.vertices.begin(), pg.vertices.end(),
                       [](const GeoPoint& v) { return is_valid(v); });
}

bool is_valid(const QueryCircle& c) {
    return is_valid(c.center) && std::isfinite(c.radius_m) && c.radius_m >= kMinRadiusM &&
           c.radius_m <= kMaxRadiusM;
}

double haversine(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = a.lat * kDegToRad;
    const double lat2 = b.lat * kDegToRad;
    const double dlat = (a.lat - b.lat) * kDegToRad;
    const double dlon = (a.lon - b.lon) * kDegToRad;

    const double sin_dlat = std::sin(dlat / 2.0);
    const double sin_dlon = std::sin(dlon / 2.0);
    const double h = sin_dlat * sin_dlat + std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

bool contains(const QueryCircle& c, const GeoPoint& p) {
    return haversine(c.center, p) <= c.radius_m;
}

GeoPoint polygon_centroid(const GeoPolygon& pg) {
    if (pg.vertices.size() < 3) throw DegeneratePolygon("polygon has fewer than 3 vertices");
    const GeoPoint& first = pg.vertices.front();
    bool all_same = std::all_of(pg.vertices.begin(), pg.vertices.end(),
                                [&](const GeoPoint& v) { return v == first; });
    if (all_same) throw DegeneratePolygon("all polygon vertices are identical");

    double lat_sum = 0.0;
    double lon_sum = 0.0;
    for (const GeoPoint& v : pg.vertices) {
        lat_sum += v.lat;
        lon_sum += v.lon;
    }
    const double n = static_cast<double>(pg.vertices.size());
    return GeoPoint{lat_sum / n, lon_sum / n};
}

namespace {

// Point-in-polygon by even-odd rule in the plane.
bool planar_inside(const std::vector<PlanarOffset>& ring, double x, double y) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = ring[i];
        const auto& b = ring[j];
        if ((a.y_m > y) != (b.y_m > y)) {
            const double x_cross = (b.x_m - a.x_m) * (y - a.y_m) / (b.y_m - a.y_m) + a.x_m;
            if (x < x_cross) inside = !inside;
        }
    }
    return inside;
}

PlanarOffset closest_on_segment(const PlanarOffset& a, const PlanarOffset& b) {
    // Closest point to the origin on segment [a, b].
    const double dx = b.x_m - a.x_m;
    const double dy = b.y_m - a.y_m;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = -(a.x_m * dx + a.y_m * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    return PlanarOffset{a.x_m + t * dx, a.y_m + t * dy};
}

}  // namespace

GeoPoint polygon_nearest_point(const GeoPolygon& pg, const GeoPoint& p) {
    if (pg.vertices.size() < 3) throw DegeneratePolygon("polygon has fewer than 3 vertices");
    const GeoPoint& first = pg.vertices.front();
    bool all_same = std::all_of(pg.vertices.begin(), pg.vertices.end(),
                                [&](const GeoPoint& v) { return v == first; });
    if (all_same) throw DegeneratePolygon("all polygon vertices are identical");

    std::vector<PlanarOffset> ring;
    ring.reserve(pg.vertices.size());
    for (const GeoPoint& v : pg.vertices) ring.push_back(to_local_plane(v, p));

    if (planar_inside(ring, 0.0, 0.0)) return p;

    PlanarOffset best{};
    double best_d2 = std::numeric_limits<double>::infinity();
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        PlanarOffset cand = closest_on_segment(ring[j], ring[i]);
        const double d2 = cand.x_m * cand.x_m + cand.y_m * cand.y_m;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = cand;
        }
    }
    return from_local_plane(best, p);
}

PlanarOffset to_local_plane(const GeoPoint& p, const GeoPoint& origin) {
    const double y = (p.lat - origin.lat) * kDegToRad * kEarthRadiusM;
    const double x = (p.lon - origin.lon) * kDegToRad * kEarthRadiusM * std::cos(origin.lat * kDegToRad);
    return PlanarOffset{x, y};
}

GeoPoint from_local_plane(const PlanarOffset& off, const GeoPoint& origin) {
    const double lat = origin.lat + (off.y_m / kEarthRadiusM) * kRadToDeg;
    const double lon =
        origin.lon + (off.x_m / (kEarthRadiusM * std::cos(origin.lat * kDegToRad))) * kRadToDeg;
    return GeoPoint{lat, lon};
}

GridCell local_grid_cell(const GeoPoint& p, const GeoPoint& origin, double cell_size_m) {
    const PlanarOffset off = to_local_plane(p, origin);
    return GridCell{static_cast<std::int64_t>(std::floor(off.y_m / cell_size_m)),
                    static_cast<std::int64_t>(std::floor(off.x_m / cell_size_m))};
}

GeoPoint grid_cell_center(const GridCell& cell, const GeoPoint& origin, double cell_size_m) {
    const PlanarOffset off{(static_cast<double>(cell.col) + 0.5) * cell_size_m,
                           (static_cast<double>(cell.row) + 0.5) * cell_size_m};
    return from_local_plane(off, origin);
}

}  // namespace mssd
