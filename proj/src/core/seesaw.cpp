#include "core/seesaw.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strategies.hpp"

namespace exg {

namespace {

constexpr int kMaxLocalDim = 4;
constexpr int kPairSweepCap = 64;

// One inequality term lifted to measurement coordinates: Alice context ca
// with outcome a, Bob context cb with outcome b. For instrumental scenarios
// cb coincides with a, for Bell scenarios cb is the setting y.
struct Term {
    int ca = 0, a = 0, cb = 0, b = 0;
    double w = 0.0;
};

struct Layout {
    bool instrumental = false;
    int alice_contexts = 0;
    int bob_contexts = 0;
    int alice_outcomes = 0;
    int bob_outcomes = 0;
    std::vector<Term> terms;
};

Layout make_layout(const LinearInequality& q) {
    Layout lay;
    const CausalScenario& s = *q.scenario;
    if (auto inst = s.instrumental_shape()) {
        lay.instrumental = true;
        lay.alice_contexts = inst->l;
        lay.bob_contexts = inst->m;
        lay.alice_outcomes = inst->m;
        lay.bob_outcomes = inst->n;
        for (const auto& [e, w] : q.terms) {
            Term t;
            t.ca = e.settings[0];
            t.a = e.outcomes[static_cast<std::size_t>(inst->a_index)];
            t.cb = t.a;
            t.b = e.outcomes[static_cast<std::size_t>(inst->b_index)];
            t.w = w;
            lay.terms.push_back(t);
        }
        return lay;
    }
    if (auto bell = s.bell_shape()) {
        lay.instrumental = false;
        lay.alice_contexts = bell->lx;
        lay.bob_contexts = bell->ly;
        lay.alice_outcomes = bell->m;
        lay.bob_outcomes = bell->n;
        for (const auto& [e, w] : q.terms) {
            Term t;
            t.ca = e.settings[static_cast<std::size_t>(bell->x_index)];
            t.cb = e.settings[static_cast<std::size_t>(bell->y_index)];
            t.a = e.outcomes[static_cast<std::size_t>(bell->a_index)];
            t.b = e.outcomes[static_cast<std::size_t>(bell->b_index)];
            t.w = w;
            lay.terms.push_back(t);
        }
        return lay;
    }
    fail(ErrorCode::invalid_argument,
         "see-saw is defined for instrumental and Bell scenarios only");
}

inline double real_of(double x) { return x; }
inline double real_of(std::complex<double> z) { return z.real(); }

template <typename Scalar>
Scalar draw_entry(SplitMix64& rng);

template <>
double draw_entry<double>(SplitMix64& rng) {
    return rng.next_gaussian();
}

template <>
std::complex<double> draw_entry<std::complex<double>>(SplitMix64& rng) {
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

template <typename Mat>
Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Scalar>
struct Engine {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const Layout& lay;
    int da, db;
    Vec psi;                           // length da*db, row-major over (a, b)
    Mat psi_mat;                       // da x db reshape of psi
    std::vector<std::vector<Mat>> ma;  // [context][outcome], da x da
    std::vector<std::vector<Mat>> nb;  // [context][outcome], db x db

    Engine(const Layout& layout, int dim_a, int dim_b)
        : lay(layout), da(dim_a), db(dim_b) {
        psi = Vec::Zero(da * db);
        psi_mat = Mat::Zero(da, db);
        ma.assign(static_cast<std::size_t>(lay.alice_contexts),
                  std::vector<Mat>(static_cast<std::size_t>(lay.alice_outcomes),
                                   Mat::Zero(da, da)));
        nb.assign(static_cast<std::size_t>(lay.bob_contexts),
                  std::vector<Mat>(static_cast<std::size_t>(lay.bob_outcomes),
                                   Mat::Zero(db, db)));
    }

    void sync_psi_mat() {
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < db; ++j) {
                psi_mat(i, j) = psi(static_cast<Eigen::Index>(i) * db + j);
            }
        }
    }

    double objective() const {
        double v = 0.0;
        for (const Term& t : lay.terms) {
            const Mat& m = ma[static_cast<std::size_t>(t.ca)][static_cast<std::size_t>(t.a)];
            const Mat& n = nb[static_cast<std::size_t>(t.cb)][static_cast<std::size_t>(t.b)];
            v += t.w * real_of((psi_mat.adjoint() * m * psi_mat * n.transpose()).trace());
        }
        return v;
    }

    // Measurement of d-dimensional projectors maximizing sum_k tr(E_k R_k)
    // subject to the E_k staying a projective measurement. Pairwise exchange:
    // for every pair the optimum within the pair's joint support is the
    // projector onto the nonnegative eigenspace of the restricted R_i - R_j,
    // which is the exact (Helstrom) optimum for two outcomes and a monotone
    // coordinate ascent for more.
    static void improve_measurement(std::vector<Mat>& effects,
                                    const std::vector<Mat>& r, int d) {
        const std::size_t k = effects.size();
        double scale = 0.0;
        for (const auto& m : r) scale = std::max(scale, m.cwiseAbs().maxCoeff());
        if (scale == 0.0) return;
        const double gain_tol = 1e-13 * scale * d;

        for (int pass = 0; pass < kPairSweepCap; ++pass) {
            bool improved = false;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i + 1; j < k; ++j) {
                    Mat s = effects[i] + effects[j];
                    const int rank = static_cast<int>(std::lround(real_of(s.trace())));
                    if (rank <= 0) continue;

                    Eigen::SelfAdjointEigenSolver<Mat> sub(s);
                    Mat q(d, rank);
                    int col = 0;
                    for (int e = 0; e < d; ++e) {
                        if (sub.eigenvalues()(e) > 0.5) {
                            q.col(col++) = sub.eigenvectors().col(e);
                        }
                    }
                    if (col != rank) continue;

                    const double before = real_of((effects[i] * r[i]).trace()) +
                                          real_of((effects[j] * r[j]).trace());
                    Mat diff = q.adjoint() * (r[i] - r[j]) * q;
                    diff = ((diff + diff.adjoint()) / Scalar(2)).eval();
                    Eigen::SelfAdjointEigenSolver<Mat> es(diff);
                    Mat ei = Mat::Zero(d, d);
                    for (int e = 0; e < rank; ++e) {
                        if (es.eigenvalues()(e) > 0.0) {
                            const Mat v = q * es.eigenvectors().col(e);
                            ei += v * v.adjoint();
                        }
                    }
                    Mat ej = s - ei;
                    const double after = real_of((ei * r[i]).trace()) +
                                         real_of((ej * r[j]).trace());
                    if (after > before + gain_tol) {
                        effects[i] = ((ei + ei.adjoint()) / Scalar(2)).eval();
                        effects[j] = ((ej + ej.adjoint()) / Scalar(2)).eval();
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
    }

    void update_alice() {
        for (int c = 0; c < lay.alice_contexts; ++c) {
            std::vector<Mat> r(static_cast<std::size_t>(lay.alice_outcomes),
                               Mat::Zero(da, da));
            bool any = false;
            for (const Term& t : lay.terms) {
                if (t.ca != c) continue;
                const Mat& n = nb[static_cast<std::size_t>(t.cb)][static_cast<std::size_t>(t.b)];
                r[static_cast<std::size_t>(t.a)] += t.w * (psi_mat * n.transpose() * psi_mat.adjoint());
                any = true;
            }
            if (!any) continue;
            improve_measurement(ma[static_cast<std::size_t>(c)], r, da);
        }
    }

    void update_bob() {
        for (int c = 0; c < lay.bob_contexts; ++c) {
            std::vector<Mat> r(static_cast<std::size_t>(lay.bob_outcomes),
                               Mat::Zero(db, db));
            bool any = false;
            for (const Term& t : lay.terms) {
                if (t.cb != c) continue;
                const Mat& m = ma[static_cast<std::size_t>(t.ca)][static_cast<std::size_t>(t.a)];
                r[static_cast<std::size_t>(t.b)] += t.w * (psi_mat.transpose() * m.transpose() * psi_mat.conjugate());
                any = true;
            }
            if (!any) continue;
            improve_measurement(nb[static_cast<std::size_t>(c)], r, db);
        }
    }

    void update_state() {
        Mat h = Mat::Zero(da * db, da * db);
        for (const Term& t : lay.terms) {
            h += t.w * kron(ma[static_cast<std::size_t>(t.ca)][static_cast<std::size_t>(t.a)],
                            nb[static_cast<std::size_t>(t.cb)][static_cast<std::size_t>(t.b)]);
        }
        h = ((h + h.adjoint()) / Scalar(2)).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        psi = es.eigenvectors().col(da * db - 1);
        sync_psi_mat();
    }

    void init_random(SplitMix64& rng) {
        for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = draw_entry<Scalar>(rng);
        const double norm = psi.norm();
        if (norm == 0.0) {
            psi.setZero();
            psi(0) = Scalar(1);
        } else {
            psi /= Scalar(norm);
        }
        sync_psi_mat();
        init_random_party(ma, lay.alice_outcomes, da, rng);
        init_random_party(nb, lay.bob_outcomes, db, rng);
    }

    static void init_random_party(std::vector<std::vector<Mat>>& party, int outcomes,
                                  int d, SplitMix64& rng) {
        for (auto& effects : party) {
            Mat g(d, d);
            for (Eigen::Index i = 0; i < g.size(); ++i) {
                g(static_cast<Eigen::Index>(i)) = draw_entry<Scalar>(rng);
            }
            Eigen::HouseholderQR<Mat> qr(g);
            Mat qfull = qr.householderQ() * Mat::Identity(d, d);
            // Distribute basis columns over the outcomes as evenly as
            // possible; extra outcomes beyond the dimension get rank 0.
            int col = 0;
            for (int a = 0; a < outcomes; ++a) {
                const int rank = d / outcomes + (a < d % outcomes ? 1 : 0);
                Mat e = Mat::Zero(d, d);
                for (int c = 0; c < rank; ++c, ++col) {
                    e += qfull.col(col) * qfull.col(col).adjoint();
                }
                effects[static_cast<std::size_t>(a)] = e;
            }
        }
    }

    // Projective embedding of a deterministic strategy: the context's chosen
    // outcome takes the identity, every other outcome the zero projector.
    void init_deterministic(const std::vector<int>& alice_choice,
                            const std::vector<int>& bob_choice) {
        psi.setZero();
        psi(0) = Scalar(1);
        sync_psi_mat();
        for (int c = 0; c < lay.alice_contexts; ++c) {
            for (int a = 0; a < lay.alice_outcomes; ++a) {
                ma[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] =
                    alice_choice[static_cast<std::size_t>(c)] == a
                        ? Mat(Mat::Identity(da, da))
                        : Mat(Mat::Zero(da, da));
            }
        }
        for (int c = 0; c < lay.bob_contexts; ++c) {
            for (int b = 0; b < lay.bob_outcomes; ++b) {
                nb[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] =
                    bob_choice[static_cast<std::size_t>(c)] == b
                        ? Mat(Mat::Identity(db, db))
                        : Mat(Mat::Zero(db, db));
            }
        }
    }

    // (value after each sweep, sweeps used)
    std::pair<std::vector<double>, int> run(int sweep_cap, double rel_improvement) {
        std::vector<double> values;
        double value = objective();
        values.push_back(value);
        int sweeps = 0;
        for (int sweep = 1; sweep <= sweep_cap; ++sweep) {
            update_alice();
            update_bob();
            update_state();
            const double next = objective();
            values.push_back(next);
            sweeps = sweep;
            require(next >= value - 1e-7 * (1.0 + std::abs(value)), ErrorCode::internal,
                    "see-saw objective decreased");
            const bool converged = next - value <= rel_improvement * (1.0 + std::abs(next));
            value = next;
            if (converged) break;
        }
        return {std::move(values), sweeps};
    }

    QuantumStrategy export_strategy() const {
        QuantumStrategy st;
        st.dim_a = da;
        st.dim_b = db;
        st.state = psi.template cast<std::complex<double>>();
        st.alice.resize(ma.size());
        for (std::size_t c = 0; c < ma.size(); ++c) {
            for (const Mat& m : ma[c]) {
                st.alice[c].push_back(m.template cast<std::complex<double>>());
            }
        }
        st.bob.resize(nb.size());
        for (std::size_t c = 0; c < nb.size(); ++c) {
            for (const Mat& m : nb[c]) {
                st.bob[c].push_back(m.template cast<std::complex<double>>());
            }
        }
        return st;
    }
};

struct RestartPlanEntry {
    bool random = true;
    std::uint64_t seed = 0;
    std::vector<int> alice_choice;  // deterministic restart only
    std::vector<int> bob_choice;
};

struct RestartOutcome {
    RestartTrace trace;
    QuantumStrategy strategy;
};

template <typename Scalar>
RestartOutcome run_restart(const LinearInequality& q, const Layout& lay,
                           const SeesawOptions& opts, const RestartPlanEntry& plan,
                           int index) {
    Engine<Scalar> eng(lay, opts.dim_a, opts.dim_b);
    if (plan.random) {
        SplitMix64 rng(plan.seed);
        eng.init_random(rng);
    } else {
        eng.init_deterministic(plan.alice_choice, plan.bob_choice);
    }
    auto [values, sweeps] = eng.run(opts.sweep_cap, opts.rel_improvement);

    RestartOutcome out;
    out.strategy = eng.export_strategy();
    out.trace.index = index;
    out.trace.random = plan.random;
    out.trace.seed = plan.seed;
    out.trace.sweeps = sweeps;
    out.trace.sweep_values = std::move(values);
    out.trace.value = q.evaluate(born_probabilities(out.strategy, q.scenario));
    return out;
}

// Response tables of the classical argmax, mapped to per-context outcome
// choices for the deterministic restart.
RestartPlanEntry deterministic_plan(const LinearInequality& q, const Layout& lay) {
    RestartPlanEntry plan;
    plan.random = false;
    const ClassicalMaxResult cm = classical_max(q);
    const CausalScenario& s = *q.scenario;
    if (lay.instrumental) {
        const InstrumentalShape shape = *s.instrumental_shape();
        plan.alice_choice = cm.argmax_tables[static_cast<std::size_t>(shape.a_index)];
        plan.bob_choice = cm.argmax_tables[static_cast<std::size_t>(shape.b_index)];
    } else {
        const BellShape shape = *s.bell_shape();
        plan.alice_choice = cm.argmax_tables[static_cast<std::size_t>(shape.a_index)];
        plan.bob_choice = cm.argmax_tables[static_cast<std::size_t>(shape.b_index)];
    }
    return plan;
}

} // namespace

SeesawResult seesaw_lower_bound(const LinearInequality& q, const SeesawOptions& opts) {
    require(opts.dim_a >= 1 && opts.dim_b >= 1, ErrorCode::invalid_argument,
            "local dimensions must be at least 1");
    require(opts.dim_a <= kMaxLocalDim && opts.dim_b <= kMaxLocalDim,
            ErrorCode::invalid_argument, "local dimensions above 4 are not supported");
    require(opts.restarts >= 1, ErrorCode::invalid_argument, "need at least one restart");
    require(opts.sweep_cap >= 1, ErrorCode::invalid_argument, "need at least one sweep");
    require(opts.threads >= 1, ErrorCode::invalid_argument, "need at least one thread");

    const Layout lay = make_layout(q);

    std::vector<RestartPlanEntry> plan(static_cast<std::size_t>(opts.restarts));
    SplitMix64 master(opts.seed);
    bool have_deterministic = true;
    try {
        plan[0] = deterministic_plan(q, lay);
    } catch (const Error&) {
        have_deterministic = false;  // oracle over cap; fall back to a random restart
    }
    if (!have_deterministic) {
        plan[0].random = true;
        plan[0].seed = master.next_u64();
    }
    for (int r = 1; r < opts.restarts; ++r) {
        plan[static_cast<std::size_t>(r)].seed = master.next_u64();
    }

    std::vector<RestartOutcome> outcomes(plan.size());
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto worker = [&](int first, int stride) {
        try {
            for (std::size_t r = static_cast<std::size_t>(first); r < plan.size();
                 r += static_cast<std::size_t>(stride)) {
                outcomes[r] = opts.complex_field
                                  ? run_restart<std::complex<double>>(q, lay, opts, plan[r],
                                                                      static_cast<int>(r))
                                  : run_restart<double>(q, lay, opts, plan[r],
                                                        static_cast<int>(r));
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int threads = std::min(opts.threads, opts.restarts);
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    SeesawResult result;
    result.trace.reserve(outcomes.size());
    int best = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.trace.push_back(outcomes[r].trace);
        if (outcomes[r].trace.value > outcomes[static_cast<std::size_t>(best)].trace.value) {
            best = static_cast<int>(r);
        }
    }
    result.best_restart = best;
    result.best_value = outcomes[static_cast<std::size_t>(best)].trace.value;
    result.best_strategy = std::move(outcomes[static_cast<std::size_t>(best)].strategy);
    return result;
}

} // namespace exg
