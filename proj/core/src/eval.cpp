#include "mssd/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "mssd/errors.hpp"

namespace mssd {

RunMetrics summarize(const ExtractionRun& run) {
    RunMetrics m;
    m.source_name = run.source_name;
    m.strategy = to_string(run.config.strategy);
    m.requests = run.ledger.request_count();
    m.distinct_locations = run.distinct_count();
    if (run.universe_size > 0) {
        m.coverage = static_cast<double>(m.distinct_locations) /
                     static_cast<double>(run.universe_size);
    }
    m.virtual_elapsed_s = run.ledger.totals().elapsed_s;
    return m;
}

RunMetrics compare(const ExtractionRun& run, const ExtractionRun& reference) {
    if (run.universe_digest != reference.universe_digest) {
        throw MismatchedUniverse("compare: runs were made against different universes");
    }
    RunMetrics m = summarize(run);
    const auto ref_requests = reference.ledger.request_count();
    const auto ref_distinct = reference.distinct_count();
    m.pct_requests_vs_reference =
        ref_requests == 0 ? 0.0
                          : static_cast<double>(m.requests) / static_cast<double>(ref_requests);
    m.pct_locations_vs_reference =
        ref_distinct == 0
            ? 0.0
            : static_cast<double>(m.distinct_locations) / static_cast<double>(ref_distinct);
    return m;
}

namespace {

// Per-candidate result sets as bitmasks over the ids any candidate can reach;
// subset unions then reduce to ORs and popcounts.
struct CandidateSets {
    std::vector<std::vector<std::uint64_t>> masks;
    std::size_t words = 0;
};

CandidateSets build_sets(const SimulatedSource& source,
                         const std::vector<QueryCircle>& candidates) {
    std::unordered_map<std::string, std::size_t> id_bit;
    std::vector<std::vector<std::size_t>> bits(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (const Location& l : source.peek_query(candidates[i].center, candidates[i].radius_m)) {
            auto [it, inserted] = id_bit.try_emplace(l.id, id_bit.size());
            bits[i].push_back(it->second);
        }
    }
    CandidateSets s;
    s.words = (id_bit.size() + 63) / 64;
    s.masks.assign(candidates.size(), std::vector<std::uint64_t>(s.words, 0));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t b : bits[i]) s.masks[i][b / 64] |= (1ull << (b % 64));
    }
    return s;
}

std::size_t popcount_union(const CandidateSets& s, const std::vector<std::size_t>& picks) {
    std::size_t covered = 0;
    for (std::size_t w = 0; w < s.words; ++w) {
        std::uint64_t acc = 0;
        for (std::size_t i : picks) acc |= s.masks[i][w];
        covered += static_cast<std::size_t>(__builtin_popcountll(acc));
    }
    return covered;
}

}  // namespace

CoverageSelection optimal_coverage(const SimulatedSource& source,
                                   const std::vector<QueryCircle>& candidates, std::size_t n) {
    if (candidates.size() > 16 || n > 5) {
        throw TooLarge("optimal_coverage: exhaustive guard is 16 candidates, n <= 5");
    }
    const CandidateSets sets = build_sets(source, candidates);
    n = std::min(n, candidates.size());

    CoverageSelection best;
    std::vector<std::size_t> picks(n);
    // Enumerate n-combinations in lexicographic order; strict improvement
    // keeps the first maximizing subset.
    const std::size_t m = candidates.size();
    if (n == 0) return best;
    for (std::size_t i = 0; i < n; ++i) picks[i] = i;
    while (true) {
        const std::size_t covered = popcount_union(sets, picks);
        if (covered > best.covered || best.picked.empty()) {
            best.picked = picks;
            best.covered = covered;
        }
        std::size_t k = n;
        while (k > 0 && picks[k - 1] == m - n + k - 1) --k;
        if (k == 0) break;
        ++picks[k - 1];
        for (std::size_t j = k; j < n; ++j) picks[j] = picks[j - 1] + 1;
    }
    return best;
}

CoverageSelection greedy_select(const SimulatedSource& source,
                                const std::vector<QueryCircle>& candidates, std::size_t n) {
    const CandidateSets sets = build_sets(source, candidates);
    n = std::min(n, candidates.size());

    CoverageSelection sel;
    std::vector<std::uint64_t> covered(sets.words, 0);
    std::vector<bool> used(candidates.size(), false);
    for (std::size_t pick = 0; pick < n; ++pick) {
        std::size_t best_i = candidates.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            std::size_t gain = 0;
            for (std::size_t w = 0; w < sets.words; ++w) {
                gain += static_cast<std::size_t>(
                    __builtin_popcountll(sets.masks[i][w] & ~covered[w]));
            }
            if (best_i == candidates.size() || gain > best_gain) {
                best_i = i;
                best_gain = gain;
            }
        }
        if (best_i == candidates.size()) break;
        used[best_i] = true;
        sel.picked.push_back(best_i);
        for (std::size_t w = 0; w < sets.words; ++w) covered[w] |= sets.masks[best_i][w];
        sel.covered += best_gain;
    }
    return sel;
}

}  // namespace mssd
