#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mssd/budget.hpp"
#include "mssd/source.hpp"

namespace mssd {

// Abstract query capability a source must provide. The engine only ever talks
// to this interface, so strategies run unchanged against any backend that
// honors the api_query contract. Live vendor adapters would implement this;
// the project ships the simulator backend only.
class SourceBackend {
public:
    virtual ~SourceBackend() = default;

    virtual std::vector<Location> query(const GeoPoint& p, double radius_m,
                                        BudgetLedger& ledger) const = 0;

    // Simulator introspection (hypothetical, budget-free queries). Returns
    // nullptr for backends that cannot answer hypotheticals.
    virtual const SimulatedSource* simulator() const { return nullptr; }

    virtual std::size_t universe_size() const { return 0; }
    virtual std::uint64_t universe_digest() const { return 0; }
};

class SimulatedBackend final : public SourceBackend {
public:
    explicit SimulatedBackend(SimulatedSource source) : source_(std::move(source)) {}

    std::vector<Location> query(const GeoPoint& p, double radius_m,
                                BudgetLedger& ledger) const override {
        return source_.api_query(p, radius_m, ledger);
    }

    const SimulatedSource* simulator() const override { return &source_; }
    std::size_t universe_size() const override { return source_.universe_size(); }
    std::uint64_t universe_digest() const override { return source_.universe_digest(); }

private:
    SimulatedSource source_;
};

// A source bound to its ledger. query() enforces the result-size contract:
// any backend returning more than M_S results is a hard error.
class SourceHandle {
public:
    SourceHandle(SourceProfile profile, std::unique_ptr<SourceBackend> backend,
                 bool strict_budget = false,
                 std::optional<std::uint64_t> total_cap = std::nullopt);

    // Convenience constructor for the common simulator case.
    explicit SourceHandle(SimulatedSource source, bool strict_budget = false,
                          std::optional<std::uint64_t> total_cap = std::nullopt);

    const std::string& name() const { return profile_.name; }
    const SourceProfile& profile() const { return profile_; }
    BudgetLedger& ledger() { return ledger_; }
    const BudgetLedger& ledger() const { return ledger_; }
    const SourceBackend& backend() const { return *backend_; }

    std::vector<Location> query(const GeoPoint& p, double radius_m);

    // Hypothetical response without consuming budget; throws SimulatorOnly
    // for backends without simulator introspection.
    std::vector<Location> peek(const GeoPoint& p, double radius_m) const;

private:
    SourceProfile profile_;
    std::unique_ptr<SourceBackend> backend_;
    BudgetLedger ledger_;
};

}  // namespace mssd
