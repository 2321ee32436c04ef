#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mssd/seed_index.hpp"
#include "mssd/source_adapter.hpp"

namespace mssd {

enum class Strategy {
    SI,           // baseline: the k initial default-parameter requests
    MSSD_F,       // fixed radius per seed point
    MSSD_D,       // radius scaled down by seed density
    MSSD_NN,      // radius = nearest-distinct-neighbor distance in the seed
    MSSD_R,       // recursive radius halving per seed point
    MSSD_STAR_C,  // cluster-recursive, polygons represented by centroids
    MSSD_STAR_N,  // cluster-recursive, polygons by nearest boundary point
    SELF_SEED,    // re-queries the points it discovered the round before
};

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct StrategyConfig {
    Strategy strategy = Strategy::MSSD_F;
    double r_m = 2000.0;   // 16 km for the recursive variants
    double alpha = 2.0;    // shrink factor, must be > 1
    double eps_m = 500.0;  // DBSCAN eps for MSSD*
    int min_pts = 10;      // DBSCAN min points for MSSD*
    double r_min_m = kMinRadiusM;
    int self_seed_rounds = 10;
    std::optional<std::uint64_t> max_requests;  // graceful stop when reached
};

// Paper-parameter defaults per strategy (2 km fixed radius, 16 km initial
// radius for the recursive variants, alpha 2, eps 500 m, min_pts 10).
StrategyConfig default_config(Strategy s);

struct ExtractionRun {
    std::string source_name;
    StrategyConfig config;
    std::vector<Location> retrieved;  // deduped by (source, id), arrival order
    BudgetLedger ledger;
    std::uint64_t recursion_floor_hits = 0;  // MSSD* floors reached on still-full queries
    int rounds_executed = 0;                 // self-seed only
    std::size_t initial_count = 0;           // |L_I| the run started from
    std::size_t universe_size = 0;           // simulator metadata for coverage
    std::uint64_t universe_digest = 0;

    std::size_t distinct_count() const { return retrieved.size(); }
};

// Cumulative distinct locations after each request, replayed from the trace.
std::vector<std::size_t> cumulative_distinct(const ExtractionRun& run);

// SI: executes the given queries once each and unions the results.
ExtractionRun run_si(SourceHandle& source, const std::vector<QueryCircle>& initial_queries);

// Alg. 1: one query of radius cfg.r_m per distinct seed point.
ExtractionRun run_mssd_fixed(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                             std::vector<Location> initial = {});

// Alg. 2: radius r / |seed points within Circle(p, r)|, floored at r_min.
ExtractionRun run_mssd_density(SourceHandle& source, const SeedSet& seed,
                               const StrategyConfig& cfg, std::vector<Location> initial = {});

// Alg. 3: radius = distance to the nearest distinct seed neighbor; a
// singleton seed falls back to cfg.r_m.
ExtractionRun run_mssd_nn(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                          std::vector<Location> initial = {});

// Alg. 4/5: per seed point, re-query the same center with radius shrunk by
// alpha while the response is full, unioning every partial result.
ExtractionRun run_mssd_recursive(SourceHandle& source, const SeedSet& seed,
                                 const StrategyConfig& cfg, std::vector<Location> initial = {});

enum class PolygonVariant { Centroid, NearestPoint };

// Alg. 6/7: DBSCAN the seed, query cluster centroids, and on a full response
// re-cluster (members + result representatives) with (eps/alpha, m/alpha),
// recursing on each sub-centroid at radius r/alpha. Floors on radius and eps
// stop still-full branches and are counted, not raised.
ExtractionRun run_mssd_star(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                            PolygonVariant variant, std::vector<Location> initial = {});

// Self-seed baseline: round 0 executes initial_queries; each later round
// queries the distinct new points discovered the round before at cfg.r_m.
ExtractionRun run_self_seed(SourceHandle& source, const std::vector<QueryCircle>& initial_queries,
                            const StrategyConfig& cfg, int rounds);

// Hypothetical new-location count of candidate against run.retrieved, in
// deterministic sampling mode, without consuming budget. Simulator only.
int greedy_gain(const SourceHandle& source, const ExtractionRun& run,
                const QueryCircle& candidate);

// Dispatch on cfg.strategy; seed may be null for SI / SELF_SEED.
ExtractionRun run_strategy(SourceHandle& source, const SeedSet* seed,
                           const std::vector<QueryCircle>& initial_queries,
                           const StrategyConfig& cfg, std::vector<Location> initial = {});

}  // namespace mssd
