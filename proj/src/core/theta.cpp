#include "core/theta.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "core/error.hpp"

namespace exg {

SdpProblem theta_sdp_problem(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    require(n >= 1, ErrorCode::invalid_argument, "theta needs at least one vertex");

    SymMatrix c(n);
    const auto& w = g.weights();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            c.set(i, j, std::sqrt(w[static_cast<std::size_t>(i)] *
                                  w[static_cast<std::size_t>(j)]));
        }
    }

    SdpProblem p{std::move(c), {}, {}};

    SymMatrix trace(n);
    for (int i = 0; i < n; ++i) trace.set(i, i, 1.0);
    p.constraint_mats.push_back(std::move(trace));
    p.constraint_rhs.push_back(1.0);

    for (auto [u, v] : g.edges()) {
        SymMatrix e(n);
        e.set(u, v, 1.0);
        p.constraint_mats.push_back(std::move(e));
        p.constraint_rhs.push_back(0.0);
    }
    return p;
}

ThetaResult lovasz_theta(const ExclusivityGraph& g, const ThetaOptions& opts) {
    SdpProblem p = theta_sdp_problem(g);
    SdpOptions so;
    so.tol = opts.tol;
    so.max_iter = opts.max_iter;
    SdpSolution sol = solve_sdp(p, so);
    if (sol.status != SdpStatus::optimal) {
        std::ostringstream msg;
        msg << "theta SDP did not converge: status="
            << (sol.status == SdpStatus::max_iter ? "max_iter" : "diverged")
            << " iterations=" << sol.iterations
            << " gap=" << sol.duality_gap
            << " primal_res=" << sol.primal_residual
            << " dual_res=" << sol.dual_residual;
        fail(ErrorCode::solver_failure, msg.str());
    }
    ThetaResult r;
    r.value = sol.dual_objective;
    r.psd_witness = sol.X;
    r.primal_value = sol.primal_objective;
    r.primal_residual = sol.primal_residual;
    r.dual_residual = sol.dual_residual;
    r.duality_gap = sol.duality_gap;
    r.iterations = sol.iterations;
    return r;
}

double theta_cycle_formula(int n) {
    require(n >= 5, ErrorCode::invalid_argument, "cycle formula needs n >= 5");
    require(n % 2 == 1, ErrorCode::invalid_argument, "cycle formula needs odd n");
    const double c = std::cos(std::numbers::pi / n);
    return static_cast<double>(n) * c / (1.0 + c);
}

} // namespace exg
