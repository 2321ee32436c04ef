#include "mssd/source_adapter.hpp"

#include "mssd/errors.hpp"

namespace mssd {

SourceHandle::SourceHandle(SourceProfile profile, std::unique_ptr<SourceBackend> backend,
                           bool strict_budget, std::optional<std::uint64_t> total_cap)
    : profile_(std::move(profile)),
      backend_(std::move(backend)),
      ledger_(profile_.name, profile_.bandwidth_limit, profile_.bandwidth_window_s, strict_budget,
              total_cap) {}

SourceHandle::SourceHandle(SimulatedSource source, bool strict_budget,
                           std::optional<std::uint64_t> total_cap)
    : SourceHandle(source.profile(), std::make_unique<SimulatedBackend>(std::move(source)),
                   strict_budget, total_cap) {}

std::vector<Location> SourceHandle::query(const GeoPoint& p, double radius_m) {
    std::vector<Location> result = backend_->query(p, radius_m, ledger_);
    if (result.size() > profile_.max_result_size) {
        throw ContractViolation(profile_.name + ": backend returned " +
                                std::to_string(result.size()) + " results, max is " +
                                std::to_string(profile_.max_result_size));
    }
    return result;
}

std::vector<Location> SourceHandle::peek(const GeoPoint& p, double radius_m) const {
    const SimulatedSource* sim = backend_->simulator();
    if (sim == nullptr) {
        throw SimulatorOnly(profile_.name + ": backend cannot answer hypothetical queries");
    }
    return sim->peek_query(p, radius_m);
}

}  // namespace mssd
