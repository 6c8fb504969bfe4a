#pragma once

#include <Eigen/Dense>

#include "core/graph.hpp"
#include "core/sdp.hpp"

namespace exg {

// Weighted Lovasz theta of an exclusivity graph, computed from the
// trace-normalized SDP
//
//   max sum_ij sqrt(w_i w_j) B_ij   s.t.  tr B = 1,
//                                         B_ij = 0 for every edge (i,j),
//                                         B  PSD.
//
// The reported value is the dual objective, which upper-bounds the optimum
// whenever the dual iterate is feasible; primal and dual agree to within
// `duality_gap` at convergence.
struct ThetaResult {
    double value = 0.0;
    Eigen::MatrixXd psd_witness;
    double primal_value = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
    int iterations = 0;
};

struct ThetaOptions {
    double tol = 1e-9;
    int max_iter = 200;
};

// Builds the theta SDP for a graph; exposed so tests can dump SDPA files.
SdpProblem theta_sdp_problem(const ExclusivityGraph& g);

ThetaResult lovasz_theta(const ExclusivityGraph& g, const ThetaOptions& opts = {});

// n cos(pi/n) / (1 + cos(pi/n)) for odd cycles C_n, n odd and >= 5.
double theta_cycle_formula(int n);

} // namespace exg
