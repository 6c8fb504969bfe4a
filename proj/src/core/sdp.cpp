#include "core/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace exg {

SymMatrix::SymMatrix(int n) : n_(n) {
    require(n >= 1, ErrorCode::invalid_argument, "matrix dimension must be positive");
    packed_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m, double sym_tol) {
    require(m.rows() == m.cols(), ErrorCode::invalid_argument, "matrix must be square");
    const int n = static_cast<int>(m.rows());
    SymMatrix out(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            require(std::abs(m(i, j) - m(j, i)) <= sym_tol, ErrorCode::validation_error,
                    "matrix is not symmetric within tolerance");
            out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
        }
    }
    return out;
}

double SymMatrix::operator()(int i, int j) const {
    require(i >= 0 && i < n_ && j >= 0 && j < n_, ErrorCode::out_of_range,
            "matrix index out of range");
    if (i > j) std::swap(i, j);
    return packed_[static_cast<std::size_t>(j) * (j + 1) / 2 + i];
}

void SymMatrix::set(int i, int j, double value) {
    require(i >= 0 && i < n_ && j >= 0 && j < n_, ErrorCode::out_of_range,
            "matrix index out of range");
    if (i > j) std::swap(i, j);
    packed_[static_cast<std::size_t>(j) * (j + 1) / 2 + i] = value;
}

Eigen::MatrixXd SymMatrix::dense() const {
    Eigen::MatrixXd m(n_, n_);
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i <= j; ++i) {
            m(i, j) = (*this)(i, j);
            m(j, i) = m(i, j);
        }
    }
    return m;
}

namespace {

constexpr int kMaxDim = 512;
constexpr double kStepFraction = 0.98;

struct Triplet {
    int i, j;
    double value;
};

// Upper-triangle nonzeros of one constraint matrix.
std::vector<Triplet> nonzeros(const SymMatrix& a) {
    std::vector<Triplet> out;
    for (int j = 0; j < a.dim(); ++j) {
        for (int i = 0; i <= j; ++i) {
            double v = a(i, j);
            if (v != 0.0) out.push_back({i, j, v});
        }
    }
    return out;
}

double inner_sym(const std::vector<Triplet>& nnz, const Eigen::MatrixXd& m) {
    double sum = 0.0;
    for (const auto& t : nnz) {
        sum += t.value * m(t.i, t.j) * (t.i == t.j ? 1.0 : 2.0);
    }
    return sum;
}

// W * A * W for a sparse symmetric A given as upper-triangle nonzeros.
Eigen::MatrixXd sandwich(const Eigen::MatrixXd& w, const std::vector<Triplet>& nnz,
                         const Eigen::MatrixXd& a_dense) {
    const auto n = w.rows();
    if (static_cast<Eigen::Index>(nnz.size()) * 4 < n) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
        for (const auto& t : nnz) {
            out.noalias() += t.value * (w.col(t.i) * w.col(t.j).transpose());
            if (t.i != t.j) out.noalias() += t.value * (w.col(t.j) * w.col(t.i).transpose());
        }
        return out;
    }
    return w * a_dense * w;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

// Symmetric square root and inverse square root via eigendecomposition,
// eigenvalues floored away from zero.
void sqrt_pair(const Eigen::MatrixXd& m, Eigen::MatrixXd& root, Eigen::MatrixXd& inv_root) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    require(es.info() == Eigen::Success, ErrorCode::solver_failure,
            "eigendecomposition failed inside the interior-point iteration");
    Eigen::VectorXd lam = es.eigenvalues();
    const double floor_value = std::max(lam.maxCoeff(), 1.0) * 1e-300;
    Eigen::VectorXd s(lam.size()), si(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        double v = std::max(lam(i), floor_value);
        s(i) = std::sqrt(v);
        si(i) = 1.0 / s(i);
    }
    root = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
    inv_root = es.eigenvectors() * si.asDiagonal() * es.eigenvectors().transpose();
}

// Largest step alpha so that m + alpha * dm stays positive semidefinite,
// through the eigenvalues of L^-1 dm L^-T.
double max_step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd s = llt.matrixL().solve(dm);
    s = llt.matrixL().solve(s.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(s),
                                                      Eigen::EigenvaluesOnly);
    double lam_min = es.eigenvalues().minCoeff();
    if (lam_min >= 0.0) return 1.0 / kStepFraction;
    return -1.0 / lam_min;
}

} // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
    const int n = p.objective.dim();
    require(n <= kMaxDim, ErrorCode::cap_exceeded,
            "SDP dimension exceeds the cap of " + std::to_string(kMaxDim));
    const int m = static_cast<int>(p.constraint_mats.size());
    require(m >= 1, ErrorCode::invalid_argument, "SDP needs at least one constraint");
    require(p.constraint_rhs.size() == p.constraint_mats.size(), ErrorCode::invalid_argument,
            "constraint matrices and right-hand sides differ in count");
    for (const auto& a : p.constraint_mats) {
        require(a.dim() == n, ErrorCode::invalid_argument,
                "constraint dimension does not match the objective");
    }
    require(opts.tol > 0 && opts.max_iter >= 1, ErrorCode::invalid_argument,
            "bad solver options");

    const Eigen::MatrixXd C = p.objective.dense();
    Eigen::VectorXd b(m);
    for (int k = 0; k < m; ++k) b(k) = p.constraint_rhs[static_cast<std::size_t>(k)];

    std::vector<std::vector<Triplet>> nnz(static_cast<std::size_t>(m));
    std::vector<Eigen::MatrixXd> a_dense(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        nnz[static_cast<std::size_t>(k)] = nonzeros(p.constraint_mats[static_cast<std::size_t>(k)]);
        a_dense[static_cast<std::size_t>(k)] = p.constraint_mats[static_cast<std::size_t>(k)].dense();
    }

    const double b_scale = 1.0 + b.lpNorm<Eigen::Infinity>();
    const double c_scale = 1.0 + C.norm();

    // Infeasible start on the identity, scaled to the data.
    double xi = std::max(1.0, b.lpNorm<Eigen::Infinity>());
    double eta = std::max(1.0, C.cwiseAbs().maxCoeff());
    Eigen::MatrixXd X = xi * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Z = eta * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    SdpSolution sol;
    auto record = [&](SdpStatus status, int iters) {
        sol.X = X;
        sol.y = y;
        sol.Z = Z;
        sol.status = status;
        sol.iterations = iters;
    };

    Eigen::VectorXd rp(m);
    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        // residuals and convergence measures
        for (int k = 0; k < m; ++k) rp(k) = b(k) - inner_sym(nnz[static_cast<std::size_t>(k)], X);
        Eigen::MatrixXd Rd = C + Z;
        for (int k = 0; k < m; ++k) Rd.noalias() -= y(k) * a_dense[static_cast<std::size_t>(k)];

        sol.primal_objective = (C.cwiseProduct(X)).sum();
        sol.dual_objective = b.dot(y);
        sol.primal_residual = rp.lpNorm<Eigen::Infinity>() / b_scale;
        sol.dual_residual = Rd.norm() / c_scale;
        sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                          (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));

        if (sol.primal_residual <= opts.tol && sol.dual_residual <= opts.tol &&
            sol.duality_gap <= opts.tol) {
            record(SdpStatus::optimal, iter);
            return sol;
        }
        if (y.lpNorm<Eigen::Infinity>() > 1e12 || X.trace() > 1e14) {
            record(SdpStatus::infeasible_detected, iter);
            return sol;
        }
        if (iter == opts.max_iter) break;

        const double mu = (X.cwiseProduct(Z)).sum() / n;

        // Nesterov-Todd scaling point W with W Z W = X.
        Eigen::MatrixXd z_root, z_inv_root;
        sqrt_pair(Z, z_root, z_inv_root);
        Eigen::MatrixXd t_root, t_inv_root;
        sqrt_pair(symmetrize(z_root * X * z_root), t_root, t_inv_root);
        Eigen::MatrixXd W = symmetrize(z_inv_root * t_root * z_inv_root);
        Eigen::MatrixXd G, G_inv;
        sqrt_pair(W, G, G_inv);

        Eigen::MatrixXd Vx = symmetrize(G_inv * X * G_inv);
        Eigen::MatrixXd Vz = symmetrize(G * Z * G);
        Eigen::MatrixXd V = 0.5 * (Vx + Vz);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ves(V);
        require(ves.info() == Eigen::Success, ErrorCode::solver_failure,
                "eigendecomposition of the scaling point failed");
        const Eigen::MatrixXd& P = ves.eigenvectors();
        const Eigen::VectorXd& d = ves.eigenvalues();

        auto lv_solve = [&](const Eigen::MatrixXd& r) {
            Eigen::MatrixXd rt = P.transpose() * r * P;
            for (Eigen::Index i = 0; i < rt.rows(); ++i) {
                for (Eigen::Index j = 0; j < rt.cols(); ++j) {
                    rt(i, j) *= 2.0 / std::max(d(i) + d(j), 1e-300);
                }
            }
            return Eigen::MatrixXd(P * rt * P.transpose());
        };

        // Schur complement M_kl = tr(A_k W A_l W), shared by both solves.
        Eigen::MatrixXd M(m, m);
        for (int k = 0; k < m; ++k) {
            Eigen::MatrixXd Tk = sandwich(W, nnz[static_cast<std::size_t>(k)],
                                          a_dense[static_cast<std::size_t>(k)]);
            for (int l = 0; l < m; ++l) {
                M(k, l) = inner_sym(nnz[static_cast<std::size_t>(l)], Tk);
            }
        }
        M = symmetrize(M);

        Eigen::LDLT<Eigen::MatrixXd> mfac;
        double ridge = 0.0;
        for (int attempt = 0;; ++attempt) {
            Eigen::MatrixXd Mreg = M;
            if (ridge > 0.0) Mreg.diagonal().array() += ridge;
            mfac.compute(Mreg);
            if (mfac.info() == Eigen::Success && mfac.isPositive()) break;
            require(attempt < 8, ErrorCode::solver_failure,
                    "Schur system is numerically singular (dependent constraints?)");
            ridge = ridge == 0.0 ? 1e-14 * (1.0 + M.trace() / m) : ridge * 100.0;
        }

        Eigen::MatrixXd WRdW = symmetrize(W * Rd * W);
        Eigen::VectorXd rd_vec(m);
        for (int k = 0; k < m; ++k) rd_vec(k) = inner_sym(nnz[static_cast<std::size_t>(k)], WRdW);

        auto direction = [&](const Eigen::MatrixXd& Rhat, Eigen::MatrixXd& dX,
                             Eigen::VectorXd& dy, Eigen::MatrixXd& dZ) {
            Eigen::MatrixXd K = symmetrize(G * lv_solve(Rhat) * G);
            Eigen::VectorXd q(m);
            for (int k = 0; k < m; ++k) {
                q(k) = inner_sym(nnz[static_cast<std::size_t>(k)], K) +
                       rd_vec(k) - rp(k);
            }
            dy = mfac.solve(q);
            dZ = -Rd;
            for (int k = 0; k < m; ++k) dZ.noalias() += dy(k) * a_dense[static_cast<std::size_t>(k)];
            dZ = symmetrize(dZ);
            dX = symmetrize(K - W * dZ * W);
        };

        // predictor (affine scaling)
        Eigen::MatrixXd VV = symmetrize(Vx * Vz);
        Eigen::MatrixXd dXa, dZa;
        Eigen::VectorXd dya;
        direction(-VV, dXa, dya, dZa);

        double ap = std::min(1.0, kStepFraction * max_step(X, dXa));
        double ad = std::min(1.0, kStepFraction * max_step(Z, dZa));
        double mu_aff = ((X + ap * dXa).cwiseProduct(Z + ad * dZa)).sum() / n;
        double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // corrector with the Mehrotra second-order term
        Eigen::MatrixXd dXh = G_inv * dXa * G_inv;
        Eigen::MatrixXd dZh = G * dZa * G;
        Eigen::MatrixXd second = symmetrize(dXh * dZh);
        Eigen::MatrixXd Rhat = sigma * mu * Eigen::MatrixXd::Identity(n, n) - VV - second;
        Eigen::MatrixXd dX, dZ;
        Eigen::VectorXd dy;
        direction(Rhat, dX, dy, dZ);

        ap = std::min(1.0, kStepFraction * max_step(X, dX));
        ad = std::min(1.0, kStepFraction * max_step(Z, dZ));

        // keep iterates safely positive definite
        for (int guard = 0; guard < 60; ++guard) {
            Eigen::LLT<Eigen::MatrixXd> test(symmetrize(X + ap * dX));
            if (test.info() == Eigen::Success) break;
            ap *= 0.8;
        }
        for (int guard = 0; guard < 60; ++guard) {
            Eigen::LLT<Eigen::MatrixXd> test(symmetrize(Z + ad * dZ));
            if (test.info() == Eigen::Success) break;
            ad *= 0.8;
        }

        X = symmetrize(X + ap * dX);
        y += ad * dy;
        Z = symmetrize(Z + ad * dZ);
    }

    record(SdpStatus::max_iter, opts.max_iter);
    return sol;
}

std::string to_sdpa_sparse(const SdpProblem& p) {
    const int n = p.objective.dim();
    const int m = static_cast<int>(p.constraint_mats.size());
    std::ostringstream out;
    out << m << "\n1\n" << n << "\n";
    char buf[64];
    for (int k = 0; k < m; ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", p.constraint_rhs[static_cast<std::size_t>(k)]);
        out << buf << (k + 1 < m ? " " : "");
    }
    out << "\n";
    auto dump_matrix = [&](int matno, const SymMatrix& a) {
        for (int j = 0; j < a.dim(); ++j) {
            for (int i = 0; i <= j; ++i) {
                double v = a(i, j);
                if (v == 0.0) continue;
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out << matno << " 1 " << (i + 1) << " " << (j + 1) << " " << buf << "\n";
            }
        }
    };
    dump_matrix(0, p.objective);
    for (int k = 0; k < m; ++k) dump_matrix(k + 1, p.constraint_mats[static_cast<std::size_t>(k)]);
    return out.str();
}

} // namespace exg
