#include "core/exclusivity.hpp"

#include <deque>
#include <set>

#include "core/error.hpp"

namespace exg {

ExclusivityWitness events_exclusive(const CausalScenario& s, const Event& e, const Event& f) {
    s.validate_event(e);
    s.validate_event(f);
    ExclusivityWitness w;
    const auto& refs = s.parent_refs();
    for (std::size_t i = 0; i < s.observed().size(); ++i) {
        if (e.outcomes[i] == f.outcomes[i]) continue;
        bool parents_agree = true;
        for (const auto& p : refs[i]) {
            int ev = p.is_instrument ? e.settings[static_cast<std::size_t>(p.index)]
                                     : e.outcomes[static_cast<std::size_t>(p.index)];
            int fv = p.is_instrument ? f.settings[static_cast<std::size_t>(p.index)]
                                     : f.outcomes[static_cast<std::size_t>(p.index)];
            if (ev != fv) {
                parents_agree = false;
                break;
            }
        }
        if (parents_agree) w.variables.push_back(static_cast<int>(i));
    }
    w.exclusive = !w.variables.empty();
    return w;
}

namespace {

std::vector<std::pair<int, int>> edges_pairwise(const CausalScenario& s,
                                                const std::vector<Event>& events) {
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(events.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (events_exclusive(s, events[static_cast<std::size_t>(i)],
                                 events[static_cast<std::size_t>(j)]).exclusive) {
                edges.emplace_back(i, j);
            }
        }
    }
    return edges;
}

// Frontier expansion: when a vertex leaves the queue it is tested against
// every vertex that has not left the queue yet, so each pair is examined
// exactly once and the edge set matches the pairwise construction.
std::vector<std::pair<int, int>> edges_breadth_first(const CausalScenario& s,
                                                     const std::vector<Event>& events) {
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(events.size());
    std::vector<char> discovered(static_cast<std::size_t>(n), 0);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    for (int root = 0; root < n; ++root) {
        if (discovered[static_cast<std::size_t>(root)]) continue;
        discovered[static_cast<std::size_t>(root)] = 1;
        queue.push_back(root);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            done[static_cast<std::size_t>(u)] = 1;
            for (int v = 0; v < n; ++v) {
                if (done[static_cast<std::size_t>(v)]) continue;
                if (!events_exclusive(s, events[static_cast<std::size_t>(u)],
                                      events[static_cast<std::size_t>(v)]).exclusive) {
                    continue;
                }
                edges.emplace_back(std::min(u, v), std::max(u, v));
                if (!discovered[static_cast<std::size_t>(v)]) {
                    discovered[static_cast<std::size_t>(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return edges;
}

} // namespace

ExclusivityGraph build_exclusivity_graph(ScenarioPtr scenario, const std::vector<Event>& events,
                                         BuildStrategy strategy) {
    require(scenario != nullptr, ErrorCode::invalid_argument, "graph build needs a scenario");
    require(static_cast<std::int64_t>(events.size()) <= ExclusivityGraph::kMaxVertices,
            ErrorCode::cap_exceeded, "event list exceeds the graph vertex cap");
    std::set<std::int64_t> seen;
    for (const auto& e : events) {
        require(seen.insert(scenario->index_of(e)).second, ErrorCode::invalid_argument,
                "duplicate event in graph event list");
    }
    auto edges = strategy == BuildStrategy::pairwise ? edges_pairwise(*scenario, events)
                                                     : edges_breadth_first(*scenario, events);
    ExclusivityGraph g(static_cast<int>(events.size()), edges);
    g.annotate(scenario, events);
    return g;
}

ExclusivityGraph build_exclusivity_graph(ScenarioPtr scenario, BuildStrategy strategy) {
    require(scenario != nullptr, ErrorCode::invalid_argument, "graph build needs a scenario");
    return build_exclusivity_graph(scenario, enumerate_events(*scenario), strategy);
}

std::vector<std::vector<std::pair<int, int>>> exclusivity_layers(const ExclusivityGraph& g) {
    const auto& scenario = g.scenario();
    require(scenario != nullptr, ErrorCode::invalid_argument,
            "layer decomposition needs a scenario-annotated graph");
    std::vector<std::vector<std::pair<int, int>>> layers(scenario->observed().size());
    const auto& events = g.events();
    for (const auto& [u, v] : g.edges()) {
        auto w = events_exclusive(*scenario, events[static_cast<std::size_t>(u)],
                                  events[static_cast<std::size_t>(v)]);
        for (int var : w.variables) {
            layers[static_cast<std::size_t>(var)].emplace_back(u, v);
        }
    }
    return layers;
}

} // namespace exg
