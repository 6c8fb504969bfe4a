#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace exg {

// Symmetric matrix in packed upper-triangle storage: entry (i,j) with i <= j
// lives at j(j+1)/2 + i.
class SymMatrix {
public:
    explicit SymMatrix(int n);
    static SymMatrix from_dense(const Eigen::MatrixXd& m, double sym_tol = 1e-12);

    int dim() const { return n_; }
    double operator()(int i, int j) const;
    void set(int i, int j, double value);
    Eigen::MatrixXd dense() const;
    const std::vector<double>& packed() const { return packed_; }

private:
    int n_ = 0;
    std::vector<double> packed_;
};

// maximize <C, X>  subject to  <A_k, X> = b_k,  X positive semidefinite
struct SdpProblem {
    SymMatrix objective;
    std::vector<SymMatrix> constraint_mats;
    std::vector<double> constraint_rhs;
};

struct SdpOptions {
    double tol = 1e-8;
    int max_iter = 200;
};

enum class SdpStatus {
    optimal,
    max_iter,
    infeasible_detected,
};

struct SdpSolution {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Eigen::MatrixXd Z;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0;   // ||b - A(X)||_inf / (1 + ||b||_inf)
    double dual_residual = 0.0;     // ||C + Z - A^T(y)||_F / (1 + ||C||_F)
    double duality_gap = 0.0;       // |primal - dual| / (1 + |primal| + |dual|)
    int iterations = 0;
    SdpStatus status = SdpStatus::max_iter;
};

// Primal-dual path-following interior point with Nesterov-Todd scaling and
// a Mehrotra predictor-corrector step. Deterministic for fixed input.
SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts = {});

// Sparse SDPA text dump (dual form: max <F0,Y>, <Fk,Y> = c_k, Y psd) for
// cross-checking against external solvers.
std::string to_sdpa_sparse(const SdpProblem& p);

} // namespace exg
