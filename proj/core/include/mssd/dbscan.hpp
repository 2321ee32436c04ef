#pragma once

#include <vector>

#include "mssd/geo.hpp"

namespace mssd {

struct Cluster {
    GeoPoint centroid;               // vertex mean of members
    std::vector<GeoPoint> members;   // canonical (lat, lon) order
    bool is_singleton_noise = false;
};

// Density-based clustering under haversine distance with an inclusive eps
// boundary and self-inclusive neighbor counts. Every input point lands in
// exactly one cluster: noise points come back as singleton clusters flagged
// is_singleton_noise so callers can still query them. Border points reachable
// from several clusters go to the cluster of the lowest-ranked core point
// (canonical (lat, lon) order), which makes the partition independent of
// input order. Throws EmptyInput on an empty point list.
std::vector<Cluster> dbscan(const std::vector<GeoPoint>& points, double eps_m, int min_pts);

}  // namespace mssd
