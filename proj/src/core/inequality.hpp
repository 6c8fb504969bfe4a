#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/scenario.hpp"

namespace exg {

// A linear functional over conditional probabilities, sum of coefficient *
// p(event), together with its classical upper bound.
struct LinearInequality {
    ScenarioPtr scenario;
    std::vector<std::pair<Event, double>> terms;
    double classical_bound = 0.0;
    std::string name;                         // catalog name, may be empty
    std::string provenance;                   // free-text derivation note
    std::optional<double> reference_ceiling;  // published quantum value, if any

    double evaluate(const Distribution& d) const;
};

// Canonicalizes on construction: duplicate events are merged into the first
// occurrence, zero coefficients dropped, events validated.
LinearInequality make_inequality(ScenarioPtr scenario,
                                 std::vector<std::pair<Event, double>> terms,
                                 double classical_bound, std::string name = {},
                                 std::string provenance = {},
                                 std::optional<double> reference_ceiling = {});

// Exclusivity graph over the inequality's support; vertex i is term i and
// carries the term's coefficient as its weight.
ExclusivityGraph support_graph(const LinearInequality& q);

std::string inequality_to_json(const LinearInequality& q);
LinearInequality inequality_from_json(const std::string& text);

} // namespace exg
