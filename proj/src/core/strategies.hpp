#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/inequality.hpp"
#include "core/scenario.hpp"

namespace exg {

// A deterministic classical strategy: one response table per observed
// variable mapping each joint parent assignment to an outcome. The latent
// variable never appears; a deterministic strategy is exactly one latent
// configuration of the causal model.
class DeterministicStrategy {
public:
    DeterministicStrategy(ScenarioPtr scenario, std::vector<std::vector<int>> tables);

    const ScenarioPtr& scenario() const { return scenario_; }
    const std::vector<std::vector<int>>& tables() const { return tables_; }

    // Outcomes produced under the given settings, in observed order.
    std::vector<int> outcomes_for(const std::vector<int>& settings) const;
    Distribution distribution() const;
    std::string to_json() const;

    // Joint parent assignments of one observed variable, indexed with the
    // first declared parent as the most significant digit.
    static std::int64_t table_size(const CausalScenario& s, int var);

private:
    ScenarioPtr scenario_;
    std::vector<std::vector<int>> tables_;
};

// Lexicographic enumeration of all deterministic strategies. Construction
// fails when the strategy count exceeds the cap.
class StrategyEnumerator {
public:
    static constexpr std::uint64_t kDefaultCap = 100'000'000;

    explicit StrategyEnumerator(ScenarioPtr scenario, std::uint64_t cap = kDefaultCap);

    std::uint64_t count() const { return count_; }
    DeterministicStrategy at(std::uint64_t index) const;

private:
    ScenarioPtr scenario_;
    std::vector<std::int64_t> table_sizes_;
    std::uint64_t count_ = 0;
};

struct ClassicalMaxResult {
    double value = 0.0;
    std::uint64_t strategies_checked = 0;
    std::vector<std::vector<int>> argmax_tables;
};

// Exhaustive maximum of the inequality over deterministic strategies. Agrees
// with the weighted stable set number of the support graph; kept separate so
// the two can cross-check each other.
ClassicalMaxResult classical_max(const LinearInequality& q,
                                 std::uint64_t cap = StrategyEnumerator::kDefaultCap);

} // namespace exg
