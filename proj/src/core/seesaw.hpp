#pragma once

#include <cstdint>
#include <vector>

#include "core/inequality.hpp"
#include "core/quantum.hpp"

namespace exg {

struct SeesawOptions {
    int dim_a = 2;
    int dim_b = 2;
    int restarts = 50;
    std::uint64_t seed = 0;
    bool complex_field = false;
    int sweep_cap = 500;
    double rel_improvement = 1e-10;
    int threads = 1;
};

struct RestartTrace {
    int index = 0;
    bool random = true;        // false for the deterministic-strategy seed
    std::uint64_t seed = 0;    // derived stream seed; 0 for the deterministic restart
    double value = 0.0;        // Born-evaluated inequality value after the sweeps
    int sweeps = 0;
    std::vector<double> sweep_values;  // objective after each sweep, first entry
                                       // is the initial objective
};

struct SeesawResult {
    double best_value = 0.0;
    int best_restart = 0;
    QuantumStrategy best_strategy;
    std::vector<RestartTrace> trace;
};

// Alternating (see-saw) maximization of the inequality over quantum
// strategies with the given local dimensions. One restart is seeded from the
// optimal deterministic strategy so the result never falls below the
// classical maximum; the rest use Gaussian-QR random bases derived from
// `seed`. Parallel runs reduce with a lowest-index tie break, so the result
// is independent of `threads`.
SeesawResult seesaw_lower_bound(const LinearInequality& q, const SeesawOptions& opts = {});

} // namespace exg
