#include "mssd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "mssd/errors.hpp"

namespace mssd {

CellDistribution learn_distribution(const std::vector<GeoPoint>& points, double cell_size_m,
                                    std::optional<GeoPoint> origin) {
    if (points.empty()) throw EmptyInput("learn_distribution: no points");
    if (!(cell_size_m > 0.0)) throw std::invalid_argument("cell size must be > 0");

    CellDistribution dist;
    dist.cell_size_m = cell_size_m;
    if (origin) {
        dist.origin = *origin;
    } else {
        double min_lat = points[0].lat, min_lon = points[0].lon;
        for (const GeoPoint& p : points) {
            min_lat = std::min(min_lat, p.lat);
            min_lon = std::min(min_lon, p.lon);
        }
        dist.origin = GeoPoint{min_lat, min_lon};
    }

    std::map<GridCell, std::size_t> counts;
    for (const GeoPoint& p : points) ++counts[local_grid_cell(p, dist.origin, cell_size_m)];

    const double total = static_cast<double>(points.size());
    dist.min_cell = counts.begin()->first;
    dist.max_cell = counts.begin()->first;
    for (const auto& [cell, n] : counts) {
        dist.cells[cell] = static_cast<double>(n) / total;
        dist.min_cell.row = std::min(dist.min_cell.row, cell.row);
        dist.min_cell.col = std::min(dist.min_cell.col, cell.col);
        dist.max_cell.row = std::max(dist.max_cell.row, cell.row);
        dist.max_cell.col = std::max(dist.max_cell.col, cell.col);
    }
    return dist;
}

void validate(const CellDistribution& dist) {
    double sum = 0.0;
    for (const auto& [cell, p] : dist.cells) {
        if (p < 0.0) throw std::invalid_argument("negative cell probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("cell probabilities sum to " + std::to_string(sum));
    }
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

std::vector<Location> generate_synthetic(const CellDistribution& dist, std::size_t count,
                                         std::uint64_t rng_seed, const SynthOptions& opts) {
    validate(dist);
    if (opts.category_vocabulary.empty()) {
        throw std::invalid_argument("category vocabulary must not be empty");
    }

    // Cumulative weights in cell order; binary search per draw.
    std::vector<GridCell> cells;
    std::vector<double> cdf;
    cells.reserve(dist.cells.size());
    cdf.reserve(dist.cells.size());
    double acc = 0.0;
    for (const auto& [cell, p] : dist.cells) {
        acc += p;
        cells.push_back(cell);
        cdf.push_back(acc);
    }

    std::mt19937_64 rng(rng_seed);
    std::vector<Location> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = unit_uniform(rng) * acc;
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const GridCell cell = cells[std::min(idx, cells.size() - 1)];

        // Uniform position inside the cell; re-draw on the rare rounding
        // case where the unprojected point falls into a neighboring cell.
        GeoPoint pos = grid_cell_center(cell, dist.origin, dist.cell_size_m);
        for (int attempt = 0; attempt < 8; ++attempt) {
            const double ux = unit_uniform(rng);
            const double uy = unit_uniform(rng);
            const GeoPoint cand = from_local_plane(
                PlanarOffset{(static_cast<double>(cell.col) + ux) * dist.cell_size_m,
                             (static_cast<double>(cell.row) + uy) * dist.cell_size_m},
                dist.origin);
            if (local_grid_cell(cand, dist.origin, dist.cell_size_m) == cell) {
                pos = cand;
                break;
            }
        }

        Location l;
        l.id = opts.id_prefix + std::to_string(i);
        l.source_name = opts.source_name;
        l.region = pos;
        const std::size_t cat = static_cast<std::size_t>(
            unit_uniform(rng) * static_cast<double>(opts.category_vocabulary.size()));
        l.attributes["category"] =
            opts.category_vocabulary[std::min(cat, opts.category_vocabulary.size() - 1)];
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<Location> mix_universe(const std::vector<Location>& real,
                                   const CellDistribution& dist, double synth_ratio,
                                   std::uint64_t rng_seed) {
    if (synth_ratio < 0.0 || synth_ratio >= 1.0) {
        throw std::invalid_argument("synth_ratio must be in [0, 1)");
    }
    std::vector<Location> out = real;
    const std::size_t synth_count = static_cast<std::size_t>(
        std::llround(static_cast<double>(real.size()) * synth_ratio / (1.0 - synth_ratio)));
    if (synth_count == 0) return out;

    SynthOptions opts;
    if (!real.empty()) opts.source_name = real.front().source_name;
    std::set<std::string> vocab;
    for (const Location& l : real) {
        auto it = l.attributes.find("category");
        if (it != l.attributes.end()) vocab.insert(it->second);
    }
    if (!vocab.empty()) opts.category_vocabulary.assign(vocab.begin(), vocab.end());

    std::vector<Location> synth = generate_synthetic(dist, synth_count, rng_seed, opts);
    out.insert(out.end(), std::make_move_iterator(synth.begin()),
               std::make_move_iterator(synth.end()));
    return out;
}

}  // namespace mssd
