#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mssd/strategies.hpp"

namespace mssd {

struct RunMetrics {
    std::string source_name;
    std::string strategy;
    std::uint64_t requests = 0;
    std::uint64_t distinct_locations = 0;
    double coverage = 0.0;  // fraction of the ground-truth universe retrieved
    double pct_requests_vs_reference = 1.0;
    double pct_locations_vs_reference = 1.0;
    std::int64_t virtual_elapsed_s = 0;
};

// Ratios of run against reference (same universe; digests must match, else
// MismatchedUniverse). Coverage is distinct / universe size when known.
RunMetrics compare(const ExtractionRun& run, const ExtractionRun& reference);

// Metrics of a run against itself (ratios 1.0).
RunMetrics summarize(const ExtractionRun& run);

struct CoverageSelection {
    std::vector<std::size_t> picked;  // candidate indices, in pick order
    std::size_t covered = 0;          // distinct locations of the union
};

// Exhaustive best n-subset of candidate circles by union size under
// deterministic sampling. Guarded: at most 16 candidates and n <= 5, else
// TooLarge. Ties resolved toward the lexicographically first index subset.
CoverageSelection optimal_coverage(const SimulatedSource& source,
                                   const std::vector<QueryCircle>& candidates, std::size_t n);

// Greedy n picks by maximal marginal gain, lowest index on ties. No size
// guards; the Theorems 2-3 machinery guarantees coverage >= (1 - 1/e) of
// optimal on every instance.
CoverageSelection greedy_select(const SimulatedSource& source,
                                const std::vector<QueryCircle>& candidates, std::size_t n);

}  // namespace mssd
