#include "core/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace exg {

namespace {

std::string format_count(long double count) {
    char buf[64];
    if (count < 1e15L) {
        std::snprintf(buf, sizeof(buf), "%.0Lf", count);
    } else {
        std::snprintf(buf, sizeof(buf), "%.4Lg", count);
    }
    return buf;
}

// Outcome tuple for one deterministic strategy under fixed settings, written
// into `outcomes` (preallocated, observed order).
void respond(const CausalScenario& s, const std::vector<std::vector<int>>& tables,
             const std::vector<int>& settings, std::vector<int>& outcomes) {
    const auto& refs = s.parent_refs();
    for (int var : s.topo_order()) {
        std::int64_t idx = 0;
        for (const auto& p : refs[static_cast<std::size_t>(var)]) {
            int card = p.is_instrument ? s.instruments()[static_cast<std::size_t>(p.index)].card
                                       : s.observed()[static_cast<std::size_t>(p.index)].card;
            int value = p.is_instrument ? settings[static_cast<std::size_t>(p.index)]
                                        : outcomes[static_cast<std::size_t>(p.index)];
            idx = idx * card + value;
        }
        outcomes[static_cast<std::size_t>(var)] =
            tables[static_cast<std::size_t>(var)][static_cast<std::size_t>(idx)];
    }
}

} // namespace

std::int64_t DeterministicStrategy::table_size(const CausalScenario& s, int var) {
    require(var >= 0 && var < static_cast<int>(s.observed().size()), ErrorCode::out_of_range,
            "observed variable index out of range");
    std::int64_t size = 1;
    for (const auto& p : s.parent_refs()[static_cast<std::size_t>(var)]) {
        int card = p.is_instrument ? s.instruments()[static_cast<std::size_t>(p.index)].card
                                   : s.observed()[static_cast<std::size_t>(p.index)].card;
        size *= card;
    }
    return size;
}

DeterministicStrategy::DeterministicStrategy(ScenarioPtr scenario,
                                             std::vector<std::vector<int>> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
    require(scenario_ != nullptr, ErrorCode::invalid_argument, "strategy needs a scenario");
    require(tables_.size() == scenario_->observed().size(), ErrorCode::invalid_argument,
            "strategy needs one response table per observed variable");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const auto& var = scenario_->observed()[i];
        require(static_cast<std::int64_t>(tables_[i].size()) ==
                    table_size(*scenario_, static_cast<int>(i)),
                ErrorCode::invalid_argument,
                "response table for '" + var.name + "' has the wrong length");
        for (int value : tables_[i]) {
            require(value >= 0 && value < var.card, ErrorCode::out_of_range,
                    "response table for '" + var.name + "' contains an out-of-range outcome");
        }
    }
}

std::vector<int> DeterministicStrategy::outcomes_for(const std::vector<int>& settings) const {
    require(settings.size() == scenario_->instruments().size(), ErrorCode::invalid_argument,
            "settings tuple does not match the instrument list");
    for (std::size_t i = 0; i < settings.size(); ++i) {
        require(settings[i] >= 0 && settings[i] < scenario_->instruments()[i].card,
                ErrorCode::out_of_range, "setting out of range");
    }
    std::vector<int> outcomes(scenario_->observed().size(), 0);
    respond(*scenario_, tables_, settings, outcomes);
    return outcomes;
}

Distribution DeterministicStrategy::distribution() const {
    std::vector<double> p(static_cast<std::size_t>(scenario_->event_count()), 0.0);
    const std::int64_t oc = scenario_->outcome_count();
    for (std::int64_t s = 0; s < scenario_->setting_count(); ++s) {
        Event probe = scenario_->event_at(s * oc);
        Event e;
        e.settings = probe.settings;
        e.outcomes = outcomes_for(e.settings);
        p[static_cast<std::size_t>(scenario_->index_of(e))] = 1.0;
    }
    return Distribution(scenario_, std::move(p));
}

std::string DeterministicStrategy::to_json() const {
    nlohmann::ordered_json j;
    auto vars = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        vars.push_back({{"name", scenario_->observed()[i].name}, {"table", tables_[i]}});
    }
    j["variables"] = std::move(vars);
    return j.dump();
}

StrategyEnumerator::StrategyEnumerator(ScenarioPtr scenario, std::uint64_t cap)
    : scenario_(std::move(scenario)) {
    require(scenario_ != nullptr, ErrorCode::invalid_argument, "enumeration needs a scenario");
    require(cap >= 1, ErrorCode::invalid_argument, "strategy cap must be positive");
    long double total = 1.0L;
    for (std::size_t i = 0; i < scenario_->observed().size(); ++i) {
        std::int64_t size = DeterministicStrategy::table_size(*scenario_, static_cast<int>(i));
        table_sizes_.push_back(size);
        total *= std::pow(static_cast<long double>(scenario_->observed()[i].card),
                          static_cast<long double>(size));
    }
    if (total > static_cast<long double>(cap)) {
        fail(ErrorCode::cap_exceeded, "scenario has " + format_count(total) +
                                          " deterministic strategies, above the cap of " +
                                          std::to_string(cap));
    }
    count_ = static_cast<std::uint64_t>(total + 0.5L);
}

DeterministicStrategy StrategyEnumerator::at(std::uint64_t index) const {
    require(index < count_, ErrorCode::out_of_range, "strategy index out of range");
    std::vector<std::vector<int>> tables(scenario_->observed().size());
    for (std::size_t i = scenario_->observed().size(); i-- > 0;) {
        const int card = scenario_->observed()[i].card;
        auto& table = tables[i];
        table.assign(static_cast<std::size_t>(table_sizes_[i]), 0);
        for (std::size_t t = table.size(); t-- > 0;) {
            table[t] = static_cast<int>(index % static_cast<std::uint64_t>(card));
            index /= static_cast<std::uint64_t>(card);
        }
    }
    return DeterministicStrategy(scenario_, std::move(tables));
}

ClassicalMaxResult classical_max(const LinearInequality& q, std::uint64_t cap) {
    require(q.scenario != nullptr, ErrorCode::invalid_argument, "inequality has no scenario");
    const CausalScenario& s = *q.scenario;
    StrategyEnumerator enumerator(q.scenario, cap);

    // Group terms by setting tuple so each strategy is queried once per
    // distinct setting.
    struct Group {
        std::vector<int> settings;
        std::vector<std::pair<std::vector<int>, double>> targets;
    };
    std::map<std::vector<int>, std::size_t> group_index;
    std::vector<Group> groups;
    for (const auto& [event, coeff] : q.terms) {
        auto [it, fresh] = group_index.try_emplace(event.settings, groups.size());
        if (fresh) groups.push_back({event.settings, {}});
        groups[it->second].targets.emplace_back(event.outcomes, coeff);
    }

    // Odometer over response tables, lexicographic, all-zero first.
    std::vector<std::vector<int>> tables(s.observed().size());
    for (std::size_t i = 0; i < tables.size(); ++i) {
        tables[i].assign(static_cast<std::size_t>(DeterministicStrategy::table_size(
                             s, static_cast<int>(i))),
                         0);
    }
    auto advance = [&]() -> bool {
        for (std::size_t i = tables.size(); i-- > 0;) {
            const int card = s.observed()[i].card;
            for (std::size_t t = tables[i].size(); t-- > 0;) {
                if (++tables[i][t] < card) return true;
                tables[i][t] = 0;
            }
        }
        return false;
    };

    ClassicalMaxResult res;
    res.value = -std::numeric_limits<double>::infinity();
    std::vector<int> outcomes(s.observed().size(), 0);
    std::uint64_t checked = 0;
    do {
        checked++;
        double value = 0.0;
        for (const auto& g : groups) {
            respond(s, tables, g.settings, outcomes);
            for (const auto& [target, coeff] : g.targets) {
                if (target == outcomes) value += coeff;
            }
        }
        if (value > res.value) {
            res.value = value;
            res.argmax_tables = tables;
        }
    } while (advance());
    require(checked == enumerator.count(), ErrorCode::internal,
            "strategy enumeration count mismatch");
    res.strategies_checked = checked;
    return res;
}

} // namespace exg
