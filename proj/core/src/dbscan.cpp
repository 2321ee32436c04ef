#include "mssd/dbscan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mssd/errors.hpp"
#include "mssd/point_grid.hpp"

namespace mssd {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Keep the smaller rank as the root so component ids are canonical.
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

}  // namespace

std::vector<Cluster> dbscan(const std::vector<GeoPoint>& points, double eps_m, int min_pts) {
    if (points.empty()) throw EmptyInput("dbscan: no points");
    if (!(eps_m > 0.0)) throw std::invalid_argument("dbscan: eps must be > 0");
    if (min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be >= 1");

    // Canonical order decouples the result from input order.
    std::vector<GeoPoint> pts = points;
    std::sort(pts.begin(), pts.end(), [](const GeoPoint& a, const GeoPoint& b) {
        if (a.lat != b.lat) return a.lat < b.lat;
        return a.lon < b.lon;
    });

    const std::size_t n = pts.size();
    const PointGrid grid(pts);

    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        neighbors[i] = grid.indices_in_circle(pts[i], eps_m);  // includes i itself
        core[i] = neighbors[i].size() >= static_cast<std::size_t>(min_pts);
    }

    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        for (std::size_t j : neighbors[i]) {
            if (core[j]) uf.unite(i, j);
        }
    }

    // cluster_of[i]: root core rank for members, n for unassigned.
    std::vector<std::size_t> cluster_of(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) cluster_of[i] = uf.find(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        // Border point: claimed by the lowest-ranked core point in range.
        for (std::size_t j : neighbors[i]) {
            if (core[j]) {
                cluster_of[i] = uf.find(j);
                break;  // neighbors are ascending, first core is lowest-ranked
            }
        }
    }

    std::map<std::size_t, std::vector<GeoPoint>> grouped;
    std::vector<std::size_t> noise;
    for (std::size_t i = 0; i < n; ++i) {
        if (cluster_of[i] == n) {
            noise.push_back(i);
        } else {
            grouped[cluster_of[i]].push_back(pts[i]);
        }
    }

    std::vector<Cluster> out;
    out.reserve(grouped.size() + noise.size());
    auto centroid_of = [](const std::vector<GeoPoint>& members) {
        double lat = 0.0, lon = 0.0;
        for (const GeoPoint& m : members) {
            lat += m.lat;
            lon += m.lon;
        }
        const double k = static_cast<double>(members.size());
        return GeoPoint{lat / k, lon / k};
    };
    for (auto& [root, members] : grouped) {
        Cluster c;
        c.centroid = centroid_of(members);
        c.members = std::move(members);
        out.push_back(std::move(c));
    }
    for (std::size_t i : noise) {
        Cluster c;
        c.centroid = pts[i];
        c.members = {pts[i]};
        c.is_singleton_noise = true;
        out.push_back(std::move(c));
    }

    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        const GeoPoint& pa = a.members.front();
        const GeoPoint& pb = b.members.front();
        if (pa.lat != pb.lat) return pa.lat < pb.lat;
        return pa.lon < pb.lon;
    });
    return out;
}

}  // namespace mssd
