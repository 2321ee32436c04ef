#include "mssd/budget.hpp"

#include <stdexcept>

#include "mssd/errors.hpp"

namespace mssd {

BudgetLedger::BudgetLedger(std::string source_name, std::uint64_t limit_per_window,
                           std::int64_t window_s, bool strict,
                           std::optional<std::uint64_t> total_cap)
    : source_name_(std::move(source_name)),
      limit_(limit_per_window),
      window_s_(window_s),
      strict_(strict),
      total_cap_(total_cap) {
    if (limit_ < 1 || window_s_ <= 0) throw std::invalid_argument("ledger limit/window invalid");
}

std::int64_t BudgetLedger::record_request(const GeoPoint& center, double radius_m,
                                          std::uint32_t result_count, std::uint32_t new_count) {
    if (total_cap_ && entries_.size() >= *total_cap_) {
        throw BudgetExhausted(source_name_ + ": total request cap reached");
    }
    if (in_window_ >= limit_) {
        if (strict_) throw BudgetExhausted(source_name_ + ": bandwidth window full");
        window_start_s_ += window_s_;
        in_window_ = 0;
    }
    ++in_window_;
    entries_.push_back(Entry{window_start_s_, center, radius_m, result_count, new_count});
    return window_start_s_;
}

void BudgetLedger::annotate_last_new_count(std::uint32_t new_count) {
    if (entries_.empty()) throw std::logic_error("annotate_last_new_count on empty ledger");
    entries_.back().new_count = new_count;
}

BudgetLedger::Totals BudgetLedger::totals() const {
    Totals t;
    t.request_count = entries_.size();
    for (const Entry& e : entries_) t.distinct_new += e.new_count;
    t.elapsed_s = entries_.empty() ? 0 : entries_.back().timestamp_s;
    return t;
}

}  // namespace mssd
