#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace mssd {

// Spherical earth model shared by every distance computation in the project.
inline constexpr double kEarthRadiusM = 6'371'000.0;

// Radius bounds for a single query circle. The lower bound is the floor used
// by the recursive strategies when they shrink the search radius; the upper
// bound is the largest radius any simulated API accepts.
inline constexpr double kMinRadiusM = 10.0;
inline constexpr double kMaxRadiusM = 100'000.0;

// WGS-84 coordinate in degrees. lat in [-90, 90], lon in [-180, 180].
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const GeoPoint& a, const GeoPoint& b) {
        return a.lat == b.lat && a.lon == b.lon;
    }
};

// Ordered ring of >= 3 vertices; the closing edge is implicit.
struct GeoPolygon {
    std::vector<GeoPoint> vertices;
};

// A query result is either a plain point or a polygon (Twitter-style areas).
using GeoRegion = std::variant<GeoPoint, GeoPolygon>;

struct QueryCircle {
    GeoPoint center;
    double radius_m = 0.0;
};

bool is_valid(const GeoPoint& p);
bool is_valid(const GeoPolygon& pg);
bool is_valid(const QueryCircle& c);

// Great-circle distance in meters on the spherical earth model.
// Exactly symmetric and zero iff the coordinates are bitwise equal.
double haversine(const GeoPoint& a, const GeoPoint& b);

// Closed-disk membership: points at exactly radius distance are inside.
bool contains(const QueryCircle& c, const GeoPoint& p);

// Vertex mean of the polygon. Throws DegeneratePolygon when every vertex is
// the same coordinate.
GeoPoint polygon_centroid(const GeoPolygon& pg);

// Returns p itself when p lies inside the polygon, otherwise the closest
// boundary point under a local equirectangular projection anchored at p.
GeoPoint polygon_nearest_point(const GeoPolygon& pg, const GeoPoint& p);

struct GridCell {
    std::int64_t row = 0;
    std::int64_t col = 0;

    friend bool operator==(const GridCell& a, const GridCell& b) {
        return a.row == b.row && a.col == b.col;
    }
    friend bool operator<(const GridCell& a, const GridCell& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    }
};

// Row/col of the cell containing p in an equirectangular projection anchored
// at origin. Cells are cell_size_m squares; the origin sits at the corner of
// cell (0, 0).
GridCell local_grid_cell(const GeoPoint& p, const GeoPoint& origin, double cell_size_m);

// Center coordinate of a grid cell; inverse of local_grid_cell up to
// floating-point rounding inside the cell.
GeoPoint grid_cell_center(const GridCell& cell, const GeoPoint& origin, double cell_size_m);

// Planar offsets (meters east, meters north) of p relative to origin under
// the same equirectangular projection used for gridding.
struct PlanarOffset {
    double x_m = 0.0;
    double y_m = 0.0;
};
PlanarOffset to_local_plane(const GeoPoint& p, const GeoPoint& origin);
GeoPoint from_local_plane(const PlanarOffset& off, const GeoPoint& origin);

}  // namespace mssd
