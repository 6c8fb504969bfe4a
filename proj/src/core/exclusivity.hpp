#pragma once

#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/scenario.hpp"

namespace exg {

struct ExclusivityWitness {
    bool exclusive = false;
    std::vector<int> variables;   // observed indices that witness exclusivity
};

// Two events are exclusive when some observed variable sees identical parent
// values (the latent common cause is not consulted) yet different outcomes.
ExclusivityWitness events_exclusive(const CausalScenario& s, const Event& e, const Event& f);

enum class BuildStrategy {
    pairwise,        // test every unordered pair of events
    breadth_first,   // frontier expansion; same edge set, different test order
};

// Exclusivity graph over all events of the scenario, vertices in event
// enumeration order regardless of strategy.
ExclusivityGraph build_exclusivity_graph(ScenarioPtr scenario,
                                         BuildStrategy strategy = BuildStrategy::pairwise);

// Exclusivity graph over a chosen event subset, vertices in the given order.
ExclusivityGraph build_exclusivity_graph(ScenarioPtr scenario, const std::vector<Event>& events,
                                         BuildStrategy strategy = BuildStrategy::pairwise);

// Edges witnessed by each observed variable, aligned with observed(). An edge
// appears in every layer that witnesses it, so layers can overlap; their
// union is exactly the edge set.
std::vector<std::vector<std::pair<int, int>>> exclusivity_layers(const ExclusivityGraph& g);

} // namespace exg
