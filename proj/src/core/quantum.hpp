#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/scenario.hpp"

namespace exg {

// Explicit quantum model on a bipartite system. Alice measures {alice[c][a]}
// in context c, Bob measures {bob[c][b]}. For instrumental scenarios Alice's
// context is the setting x and Bob's context is Alice's outcome a; for Bell
// scenarios the contexts are the settings x and y. All measurements are
// projective. Entries are real whenever the strategy was produced with the
// real field (the default).
struct QuantumStrategy {
    int dim_a = 2;
    int dim_b = 2;
    Eigen::VectorXcd state;                            // length dim_a * dim_b
    std::vector<std::vector<Eigen::MatrixXcd>> alice;  // [context][outcome]
    std::vector<std::vector<Eigen::MatrixXcd>> bob;    // [context][outcome]
};

// Checks shape against the scenario (instrumental or Bell) plus the numeric
// invariants: unit state norm within 1e-10, Hermitian projectors, pairwise
// orthogonality within 1e-9, completeness within 1e-9 per context.
void validate_strategy(const QuantumStrategy& st, const CausalScenario& s);

// p(ab|x) = <Psi| M^x_a (x) N^a_b |Psi> for instrumental scenarios,
// p(ab|xy) = <Psi| M^x_a (x) N^y_b |Psi> for Bell scenarios.
Distribution born_probabilities(const QuantumStrategy& st, const ScenarioPtr& s);

bool strategy_is_real(const QuantumStrategy& st);

std::string strategy_to_json(const QuantumStrategy& st);
QuantumStrategy strategy_from_json(const std::string& text);

} // namespace exg
