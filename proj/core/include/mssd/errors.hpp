#pragma once

#include <stdexcept>
#include <string>

namespace mssd {

// Thrown when a polygon collapses to a single coordinate.
struct DegeneratePolygon : std::runtime_error {
    explicit DegeneratePolygon(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInput : std::runtime_error {
    explicit EmptyInput(const std::string& what) : std::runtime_error(what) {}
};

// Raised by a ledger in strict mode when the request budget is gone.
struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Two runs being compared were produced against different universes.
struct MismatchedUniverse : std::runtime_error {
    explicit MismatchedUniverse(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive-search guard tripped.
struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Operation needs simulator introspection that a live backend cannot provide.
struct SimulatorOnly : std::runtime_error {
    explicit SimulatorOnly(const std::string& what) : std::runtime_error(what) {}
};

// A backend violated the source contract (e.g. returned more than M_S results).
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// Reserved for live adapters that cannot reach their service.
struct BackendUnavailable : std::runtime_error {
    explicit BackendUnavailable(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mssd
