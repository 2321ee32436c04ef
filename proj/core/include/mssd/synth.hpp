#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mssd/location.hpp"

namespace mssd {

// Grid-cell frequency distribution learned from real points. Probabilities
// are cell counts over the total and sum to 1.
struct CellDistribution {
    GeoPoint origin;            // corner of cell (0, 0)
    double cell_size_m = 1000.0;
    std::map<GridCell, double> cells;
    GridCell min_cell, max_cell;  // bounding extent over occupied cells
};

// Learns cell frequencies over a grid anchored at `origin` (the min-corner
// of the points' bounding box when omitted). Passing an explicit origin keeps
// grids aligned across datasets. Throws EmptyInput when points is empty.
CellDistribution learn_distribution(const std::vector<GeoPoint>& points, double cell_size_m = 1000.0,
                                    std::optional<GeoPoint> origin = std::nullopt);

void validate(const CellDistribution& dist);  // probabilities >= 0, sum to 1 +- 1e-9

struct SynthOptions {
    std::string id_prefix = "syn-";
    std::string source_name = "synthetic";
    std::vector<std::string> category_vocabulary = {"poi"};
};

// Draws `count` point locations: the cell from the distribution, the position
// uniform within the cell. Deterministic under rng_seed.
std::vector<Location> generate_synthetic(const CellDistribution& dist, std::size_t count,
                                         std::uint64_t rng_seed, const SynthOptions& opts = {});

// real plus synthetic where synthetic count = |real| * ratio / (1 - ratio),
// rounded to nearest. Synthetic points carry the real source name and a
// category sampled from the real vocabulary. ratio must be in [0, 1).
std::vector<Location> mix_universe(const std::vector<Location>& real,
                                   const CellDistribution& dist, double synth_ratio,
                                   std::uint64_t rng_seed);

}  // namespace mssd
