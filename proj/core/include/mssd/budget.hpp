#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mssd/geo.hpp"

namespace mssd {

// Per-source request accounting on a virtual clock. Requests inside a window
// share the window-start timestamp; when a window fills up the clock jumps to
// the next window start, so k*limit requests take (k-1)*window of virtual
// time. In strict mode the ledger throws BudgetExhausted instead of sleeping,
// and an optional total cap hard-stops a run.
class BudgetLedger {
public:
    struct Entry {
        std::int64_t timestamp_s = 0;
        GeoPoint center;
        double radius_m = 0.0;
        std::uint32_t result_count = 0;
        std::uint32_t new_count = 0;
    };

    struct Totals {
        std::uint64_t request_count = 0;
        std::uint64_t distinct_new = 0;
        std::int64_t elapsed_s = 0;
    };

    BudgetLedger() = default;
    BudgetLedger(std::string source_name, std::uint64_t limit_per_window, std::int64_t window_s,
                 bool strict = false, std::optional<std::uint64_t> total_cap = std::nullopt);

    // Appends one request, advancing the virtual clock first if the current
    // window is full. Returns the effective timestamp.
    std::int64_t record_request(const GeoPoint& center, double radius_m,
                                std::uint32_t result_count, std::uint32_t new_count = 0);

    // The engine learns how many results were new only after deduplication;
    // it back-fills the count here. Entries store it verbatim.
    void annotate_last_new_count(std::uint32_t new_count);

    Totals totals() const;

    const std::string& source_name() const { return source_name_; }
    std::uint64_t limit_per_window() const { return limit_; }
    std::int64_t window_s() const { return window_s_; }
    std::int64_t virtual_now_s() const { return window_start_s_; }
    std::uint64_t request_count() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::string source_name_;
    std::uint64_t limit_ = 1;
    std::int64_t window_s_ = 1;
    bool strict_ = false;
    std::optional<std::uint64_t> total_cap_;

    std::int64_t window_start_s_ = 0;
    std::uint64_t in_window_ = 0;
    std::vector<Entry> entries_;
};

}  // namespace mssd
