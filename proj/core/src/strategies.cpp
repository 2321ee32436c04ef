#include "mssd/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

#include "mssd/dbscan.hpp"
#include "mssd/errors.hpp"

namespace mssd {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::SI: return "si";
        case Strategy::MSSD_F: return "mssd-f";
        case Strategy::MSSD_D: return "mssd-d";
        case Strategy::MSSD_NN: return "mssd-nn";
        case Strategy::MSSD_R: return "mssd-r";
        case Strategy::MSSD_STAR_C: return "mssd-star-c";
        case Strategy::MSSD_STAR_N: return "mssd-star-n";
        case Strategy::SELF_SEED: return "self-seed";
    }
    return "unknown";
}

Strategy strategy_from_string(const std::string& s) {
    for (Strategy v : {Strategy::SI, Strategy::MSSD_F, Strategy::MSSD_D, Strategy::MSSD_NN,
                       Strategy::MSSD_R, Strategy::MSSD_STAR_C, Strategy::MSSD_STAR_N,
                       Strategy::SELF_SEED}) {
        if (s == to_string(v)) return v;
    }
    throw std::invalid_argument("unknown strategy: " + s);
}

StrategyConfig default_config(Strategy s) {
    StrategyConfig cfg;
    cfg.strategy = s;
    switch (s) {
        case Strategy::MSSD_R:
        case Strategy::MSSD_STAR_C:
        case Strategy::MSSD_STAR_N:
            cfg.r_m = 16'000.0;
            break;
        default:
            cfg.r_m = 2'000.0;
            break;
    }
    return cfg;
}

std::vector<std::size_t> cumulative_distinct(const ExtractionRun& run) {
    std::vector<std::size_t> out;
    out.reserve(run.ledger.entries().size());
    std::size_t total = run.initial_count;
    for (const auto& e : run.ledger.entries()) {
        total += e.new_count;
        out.push_back(total);
    }
    return out;
}

namespace {

// Per-run working state: the dedup set plus the stop conditions every
// strategy shares.
class Extractor {
public:
    Extractor(SourceHandle& source, StrategyConfig cfg, std::vector<Location> initial)
        : source_(source) {
        run_.source_name = source.name();
        run_.config = cfg;
        run_.universe_size = source.backend().universe_size();
        run_.universe_digest = source.backend().universe_digest();
        for (Location& l : initial) merge(std::move(l));
        run_.initial_count = run_.retrieved.size();
    }

    bool budget_left() const {
        return !run_.config.max_requests ||
               source_.ledger().request_count() < *run_.config.max_requests;
    }

    // One budgeted query; merges results and back-fills the gain trace.
    // Returns the raw response (its size against M_S drives recursion).
    std::vector<Location> query(const GeoPoint& p, double radius_m) {
        const double r = std::clamp(radius_m, run_.config.r_min_m, kMaxRadiusM);
        std::vector<Location> raw = source_.query(p, r);
        std::uint32_t news = 0;
        for (const Location& l : raw) {
            if (merge(l)) ++news;
        }
        source_.ledger().annotate_last_new_count(news);
        return raw;
    }

    ExtractionRun finish() {
        run_.ledger = source_.ledger();
        return std::move(run_);
    }

    ExtractionRun& run() { return run_; }
    std::uint32_t max_result_size() const { return source_.profile().max_result_size; }

    bool merge(Location l) {
        if (!keys_.insert(location_key(l)).second) return false;
        run_.retrieved.push_back(std::move(l));
        return true;
    }

private:
    SourceHandle& source_;
    ExtractionRun run_;
    std::unordered_set<std::string> keys_;
};

void require_alpha(const StrategyConfig& cfg) {
    if (!(cfg.alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
}

}  // namespace

ExtractionRun run_si(SourceHandle& source, const std::vector<QueryCircle>& initial_queries) {
    if (initial_queries.empty()) throw EmptyInput("run_si: no initial queries");
    StrategyConfig cfg = default_config(Strategy::SI);
    Extractor ex(source, cfg, {});
    for (const QueryCircle& q : initial_queries) {
        if (!ex.budget_left()) break;
        ex.query(q.center, q.radius_m);
    }
    return ex.finish();
}

ExtractionRun run_mssd_fixed(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                             std::vector<Location> initial) {
    if (seed.size() == 0) throw EmptyInput("run_mssd_fixed: empty seed");
    Extractor ex(source, cfg, std::move(initial));
    for (const GeoPoint& p : seed.points()) {
        if (!ex.budget_left()) break;
        ex.query(p, cfg.r_m);
    }
    return ex.finish();
}

ExtractionRun run_mssd_density(SourceHandle& source, const SeedSet& seed,
                               const StrategyConfig& cfg, std::vector<Location> initial) {
    if (seed.size() == 0) throw EmptyInput("run_mssd_density: empty seed");
    Extractor ex(source, cfg, std::move(initial));
    for (const GeoPoint& p : seed.points()) {
        if (!ex.budget_left()) break;
        const std::size_t n = seed.count_in_circle(QueryCircle{p, cfg.r_m});
        ex.query(p, cfg.r_m / static_cast<double>(std::max<std::size_t>(1, n)));
    }
    return ex.finish();
}

ExtractionRun run_mssd_nn(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                          std::vector<Location> initial) {
    if (seed.size() == 0) throw EmptyInput("run_mssd_nn: empty seed");
    Extractor ex(source, cfg, std::move(initial));
    for (const GeoPoint& p : seed.points()) {
        if (!ex.budget_left()) break;
        const auto nn = seed.nearest_distinct(p);
        ex.query(p, nn ? nn->distance_m : cfg.r_m);
    }
    return ex.finish();
}

ExtractionRun run_mssd_recursive(SourceHandle& source, const SeedSet& seed,
                                 const StrategyConfig& cfg, std::vector<Location> initial) {
    if (seed.size() == 0) throw EmptyInput("run_mssd_recursive: empty seed");
    require_alpha(cfg);
    Extractor ex(source, cfg, std::move(initial));
    for (const GeoPoint& p : seed.points()) {
        double r = cfg.r_m;
        while (ex.budget_left()) {
            const std::vector<Location> raw = ex.query(p, r);
            if (raw.size() < ex.max_result_size()) break;  // area is not dense
            if (r / cfg.alpha < cfg.r_min_m) {
                ++ex.run().recursion_floor_hits;
                break;
            }
            r /= cfg.alpha;
        }
    }
    return ex.finish();
}

namespace {

GeoPoint representative_point(const Location& l, const GeoPoint& query_center,
                              PolygonVariant variant) {
    if (const auto* p = std::get_if<GeoPoint>(&l.region)) return *p;
    const GeoPolygon& pg = std::get<GeoPolygon>(l.region);
    return variant == PolygonVariant::Centroid ? polygon_centroid(pg)
                                               : polygon_nearest_point(pg, query_center);
}

void rad_recursive_star(Extractor& ex, const GeoPoint& center,
                        const std::vector<GeoPoint>& members, double r, double eps, int min_pts,
                        double alpha, double r_min, PolygonVariant variant) {
    if (!ex.budget_left()) return;
    const std::vector<Location> raw = ex.query(center, r);
    if (raw.size() < ex.max_result_size()) return;  // not dense, stop this branch

    const double next_r = r / alpha;
    const double next_eps = eps / alpha;
    if (next_r < r_min || next_eps < 1.0) {
        ++ex.run().recursion_floor_hits;
        return;
    }
    const int next_m = std::max(1, static_cast<int>(std::floor(min_pts / alpha)));

    // Re-cluster the union of the cluster's own points and the points the
    // response revealed, then chase every sub-centroid.
    std::vector<GeoPoint> pts = members;
    pts.reserve(pts.size() + raw.size());
    for (const Location& l : raw) pts.push_back(representative_point(l, center, variant));
    std::sort(pts.begin(), pts.end(), [](const GeoPoint& a, const GeoPoint& b) {
        if (a.lat != b.lat) return a.lat < b.lat;
        return a.lon < b.lon;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    for (const Cluster& sub : dbscan(pts, next_eps, next_m)) {
        rad_recursive_star(ex, sub.centroid, sub.members, next_r, next_eps, next_m, alpha, r_min,
                           variant);
    }
}

}  // namespace

ExtractionRun run_mssd_star(SourceHandle& source, const SeedSet& seed, const StrategyConfig& cfg,
                            PolygonVariant variant, std::vector<Location> initial) {
    if (seed.size() == 0) throw EmptyInput("run_mssd_star: empty seed");
    require_alpha(cfg);
    Extractor ex(source, cfg, std::move(initial));
    for (const Cluster& c : dbscan(seed.points(), cfg.eps_m, cfg.min_pts)) {
        rad_recursive_star(ex, c.centroid, c.members, cfg.r_m, cfg.eps_m, cfg.min_pts, cfg.alpha,
                           cfg.r_min_m, variant);
    }
    return ex.finish();
}

namespace {

std::uint64_t coord_key(const GeoPoint& p) {
    std::uint64_t a, b;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&a, &p.lat, sizeof a);
    std::memcpy(&b, &p.lon, sizeof b);
    return a ^ (b * 0x9e3779b97f4a7c15ull);
}

}  // namespace

ExtractionRun run_self_seed(SourceHandle& source, const std::vector<QueryCircle>& initial_queries,
                            const StrategyConfig& cfg, int rounds) {
    if (rounds < 1) throw std::invalid_argument("self-seed needs rounds >= 1");
    if (initial_queries.empty()) throw EmptyInput("run_self_seed: no initial queries");

    StrategyConfig run_cfg = cfg;
    run_cfg.strategy = Strategy::SELF_SEED;
    run_cfg.self_seed_rounds = rounds;
    Extractor ex(source, run_cfg, {});

    std::unordered_set<std::uint64_t> seen_points;
    std::vector<GeoPoint> frontier;

    // The points of newly discovered locations feed the next round, each
    // distinct coordinate at most once across the whole run.
    const auto harvest = [&](std::size_t news_from) {
        for (std::size_t i = news_from; i < ex.run().retrieved.size(); ++i) {
            const GeoPoint q = point_of(ex.run().retrieved[i]);
            if (seen_points.insert(coord_key(q)).second) frontier.push_back(q);
        }
    };

    for (const QueryCircle& q : initial_queries) {
        if (!ex.budget_left()) break;
        seen_points.insert(coord_key(q.center));
        const std::size_t before = ex.run().retrieved.size();
        ex.query(q.center, q.radius_m);
        harvest(before);
    }
    ex.run().rounds_executed = 1;

    for (int round = 1; round < rounds && !frontier.empty(); ++round) {
        std::vector<GeoPoint> current;
        current.swap(frontier);
        std::sort(current.begin(), current.end(), [](const GeoPoint& a, const GeoPoint& b) {
            if (a.lat != b.lat) return a.lat < b.lat;
            return a.lon < b.lon;
        });
        bool stopped = false;
        for (const GeoPoint& p : current) {
            if (!ex.budget_left()) {
                stopped = true;
                break;
            }
            const std::size_t before = ex.run().retrieved.size();
            ex.query(p, cfg.r_m);
            harvest(before);
        }
        ++ex.run().rounds_executed;
        if (stopped) break;
    }
    return ex.finish();
}

int greedy_gain(const SourceHandle& source, const ExtractionRun& run,
                const QueryCircle& candidate) {
    const std::vector<Location> hypothetical = source.peek(candidate.center, candidate.radius_m);
    std::unordered_set<std::string> keys;
    keys.reserve(run.retrieved.size());
    for (const Location& l : run.retrieved) keys.insert(location_key(l));
    int gain = 0;
    for (const Location& l : hypothetical) {
        if (!keys.count(location_key(l))) ++gain;
    }
    return gain;
}

ExtractionRun run_strategy(SourceHandle& source, const SeedSet* seed,
                           const std::vector<QueryCircle>& initial_queries,
                           const StrategyConfig& cfg, std::vector<Location> initial) {
    const auto need_seed = [&]() -> const SeedSet& {
        if (seed == nullptr) throw std::invalid_argument("strategy requires a seed set");
        return *seed;
    };
    switch (cfg.strategy) {
        case Strategy::SI: return run_si(source, initial_queries);
        case Strategy::MSSD_F: return run_mssd_fixed(source, need_seed(), cfg, std::move(initial));
        case Strategy::MSSD_D:
            return run_mssd_density(source, need_seed(), cfg, std::move(initial));
        case Strategy::MSSD_NN: return run_mssd_nn(source, need_seed(), cfg, std::move(initial));
        case Strategy::MSSD_R:
            return run_mssd_recursive(source, need_seed(), cfg, std::move(initial));
        case Strategy::MSSD_STAR_C:
            return run_mssd_star(source, need_seed(), cfg, PolygonVariant::Centroid,
                                 std::move(initial));
        case Strategy::MSSD_STAR_N:
            return run_mssd_star(source, need_seed(), cfg, PolygonVariant::NearestPoint,
                                 std::move(initial));
        case Strategy::SELF_SEED:
            return run_self_seed(source, initial_queries, cfg, cfg.self_seed_rounds);
    }
    throw std::logic_error("unreachable strategy");
}

}  // namespace mssd
