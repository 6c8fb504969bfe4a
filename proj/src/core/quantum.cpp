#include "core/quantum.hpp"

#include <cmath>
#include <cstddef>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace exg {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kProjTol = 1e-9;

using Json = nlohmann::ordered_json;

void check_measurement(const std::vector<Eigen::MatrixXcd>& effects, int dim,
                       const char* party, int context) {
    const auto where = [&](const char* what) {
        return std::string(what) + " for " + party + " context " +
               std::to_string(context);
    };
    require(!effects.empty(), ErrorCode::validation_error, where("empty measurement"));
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& e : effects) {
        require(e.rows() == dim && e.cols() == dim, ErrorCode::validation_error,
                where("projector dimension mismatch"));
        require((e - e.adjoint()).norm() <= kProjTol, ErrorCode::validation_error,
                where("non-Hermitian projector"));
        sum += e;
    }
    for (std::size_t i = 0; i < effects.size(); ++i) {
        for (std::size_t j = i + 1; j < effects.size(); ++j) {
            require((effects[i] * effects[j]).norm() <= kProjTol,
                    ErrorCode::validation_error, where("non-orthogonal projectors"));
        }
    }
    require((sum - Eigen::MatrixXcd::Identity(dim, dim)).norm() <= kProjTol,
            ErrorCode::validation_error, where("incomplete measurement"));
}

struct ShapeInfo {
    bool instrumental = false;
    InstrumentalShape inst;
    BellShape bell;
};

ShapeInfo resolve_shape(const QuantumStrategy& st, const CausalScenario& s) {
    ShapeInfo info;
    if (auto inst = s.instrumental_shape()) {
        info.instrumental = true;
        info.inst = *inst;
        require(static_cast<int>(st.alice.size()) == inst->l, ErrorCode::validation_error,
                "strategy needs one Alice context per setting");
        for (const auto& ctx : st.alice) {
            require(static_cast<int>(ctx.size()) == inst->m, ErrorCode::validation_error,
                    "Alice measurement needs one projector per outcome");
        }
        require(static_cast<int>(st.bob.size()) == inst->m, ErrorCode::validation_error,
                "strategy needs one Bob context per Alice outcome");
        for (const auto& ctx : st.bob) {
            require(static_cast<int>(ctx.size()) == inst->n, ErrorCode::validation_error,
                    "Bob measurement needs one projector per outcome");
        }
        return info;
    }
    if (auto bell = s.bell_shape()) {
        info.instrumental = false;
        info.bell = *bell;
        require(static_cast<int>(st.alice.size()) == bell->lx, ErrorCode::validation_error,
                "strategy needs one Alice context per X setting");
        for (const auto& ctx : st.alice) {
            require(static_cast<int>(ctx.size()) == bell->m, ErrorCode::validation_error,
                    "Alice measurement needs one projector per outcome");
        }
        require(static_cast<int>(st.bob.size()) == bell->ly, ErrorCode::validation_error,
                "strategy needs one Bob context per Y setting");
        for (const auto& ctx : st.bob) {
            require(static_cast<int>(ctx.size()) == bell->n, ErrorCode::validation_error,
                    "Bob measurement needs one projector per outcome");
        }
        return info;
    }
    fail(ErrorCode::invalid_argument,
         "quantum strategies are defined for instrumental and Bell scenarios only");
}

} // namespace

void validate_strategy(const QuantumStrategy& st, const CausalScenario& s) {
    require(st.dim_a >= 1 && st.dim_b >= 1, ErrorCode::validation_error,
            "subsystem dimensions must be at least 1");
    require(st.state.size() == static_cast<Eigen::Index>(st.dim_a) * st.dim_b,
            ErrorCode::validation_error, "state length must equal dim_a * dim_b");
    require(std::abs(st.state.norm() - 1.0) <= kNormTol, ErrorCode::validation_error,
            "state must be normalized");
    resolve_shape(st, s);
    for (std::size_t c = 0; c < st.alice.size(); ++c) {
        check_measurement(st.alice[c], st.dim_a, "Alice", static_cast<int>(c));
    }
    for (std::size_t c = 0; c < st.bob.size(); ++c) {
        check_measurement(st.bob[c], st.dim_b, "Bob", static_cast<int>(c));
    }
}

Distribution born_probabilities(const QuantumStrategy& st, const ScenarioPtr& sp) {
    require(sp != nullptr, ErrorCode::invalid_argument, "born needs a scenario");
    const CausalScenario& s = *sp;
    validate_strategy(st, s);
    const ShapeInfo info = resolve_shape(st, s);

    // With Psi reshaped to a dim_a x dim_b matrix (row index on Alice's side),
    // <Psi|(M (x) N)|Psi> = tr(Psi^dag M Psi N^T).
    Eigen::MatrixXcd psi(st.dim_a, st.dim_b);
    for (int i = 0; i < st.dim_a; ++i) {
        for (int j = 0; j < st.dim_b; ++j) {
            psi(i, j) = st.state(static_cast<Eigen::Index>(i) * st.dim_b + j);
        }
    }
    // Born values of projective effects lie in [0, 1]; excursions inside the
    // validation tolerance are roundoff and get clamped, anything larger is
    // left for the Distribution checks to reject.
    const auto born = [&](const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& n) {
        double p = (psi.adjoint() * m * psi * n.transpose()).trace().real();
        if (p < 0.0 && p > -kProjTol) p = 0.0;
        if (p > 1.0 && p < 1.0 + kProjTol) p = 1.0;
        return p;
    };

    std::vector<double> probs(static_cast<std::size_t>(s.event_count()), 0.0);
    for (std::int64_t i = 0; i < s.event_count(); ++i) {
        const Event e = s.event_at(i);
        double p = 0.0;
        if (info.instrumental) {
            const int x = e.settings[0];
            const int a = e.outcomes[static_cast<std::size_t>(info.inst.a_index)];
            const int b = e.outcomes[static_cast<std::size_t>(info.inst.b_index)];
            p = born(st.alice[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)],
                     st.bob[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        } else {
            const int x = e.settings[static_cast<std::size_t>(info.bell.x_index)];
            const int y = e.settings[static_cast<std::size_t>(info.bell.y_index)];
            const int a = e.outcomes[static_cast<std::size_t>(info.bell.a_index)];
            const int b = e.outcomes[static_cast<std::size_t>(info.bell.b_index)];
            p = born(st.alice[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)],
                     st.bob[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)]);
        }
        probs[static_cast<std::size_t>(i)] = p;
    }

    return Distribution(sp, std::move(probs));
}

bool strategy_is_real(const QuantumStrategy& st) {
    const auto mat_real = [](const Eigen::MatrixXcd& m) {
        return m.imag().cwiseAbs().maxCoeff() == 0.0;
    };
    if (st.state.size() > 0 && st.state.imag().cwiseAbs().maxCoeff() != 0.0) return false;
    for (const auto& ctx : st.alice) {
        for (const auto& m : ctx) {
            if (m.size() > 0 && !mat_real(m)) return false;
        }
    }
    for (const auto& ctx : st.bob) {
        for (const auto& m : ctx) {
            if (m.size() > 0 && !mat_real(m)) return false;
        }
    }
    return true;
}

namespace {

Json number_or_pair(std::complex<double> z, bool real_field) {
    if (real_field) return z.real();
    return Json::array({z.real(), z.imag()});
}

std::complex<double> parse_entry(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            ErrorCode::parse_error, "matrix entries must be numbers or [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Eigen::MatrixXcd& m, bool real_field) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(number_or_pair(m(i, j), real_field));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j, int dim) {
    require(j.is_array() && static_cast<int>(j.size()) == dim, ErrorCode::parse_error,
            "matrix row count mismatch");
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        require(row.is_array() && static_cast<int>(row.size()) == dim,
                ErrorCode::parse_error, "matrix column count mismatch");
        for (int k = 0; k < dim; ++k) {
            m(i, k) = parse_entry(row[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

Json party_to_json(const std::vector<std::vector<Eigen::MatrixXcd>>& party,
                   bool real_field) {
    Json contexts = Json::array();
    for (const auto& ctx : party) {
        Json effects = Json::array();
        for (const auto& m : ctx) effects.push_back(matrix_to_json(m, real_field));
        contexts.push_back(std::move(effects));
    }
    return contexts;
}

std::vector<std::vector<Eigen::MatrixXcd>> party_from_json(const Json& j, int dim) {
    require(j.is_array() && !j.empty(), ErrorCode::parse_error,
            "measurement list must be a nonempty array");
    std::vector<std::vector<Eigen::MatrixXcd>> party;
    for (const Json& ctx : j) {
        require(ctx.is_array() && !ctx.empty(), ErrorCode::parse_error,
                "each context must be a nonempty array of matrices");
        std::vector<Eigen::MatrixXcd> effects;
        for (const Json& m : ctx) effects.push_back(matrix_from_json(m, dim));
        party.push_back(std::move(effects));
    }
    return party;
}

} // namespace

std::string strategy_to_json(const QuantumStrategy& st) {
    const bool real_field = strategy_is_real(st);
    Json j;
    j["dims"] = Json::array({st.dim_a, st.dim_b});
    j["field"] = real_field ? "real" : "complex";
    Json state = Json::array();
    for (Eigen::Index i = 0; i < st.state.size(); ++i) {
        state.push_back(number_or_pair(st.state(i), real_field));
    }
    j["state"] = std::move(state);
    j["alice"] = party_to_json(st.alice, real_field);
    j["bob"] = party_to_json(st.bob, real_field);
    return j.dump();
}

QuantumStrategy strategy_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("invalid strategy JSON: ") + e.what());
    }
    require(j.is_object(), ErrorCode::parse_error, "strategy JSON must be an object");
    require(j.contains("dims") && j["dims"].is_array() && j["dims"].size() == 2,
            ErrorCode::parse_error, "strategy needs dims: [dim_a, dim_b]");
    QuantumStrategy st;
    st.dim_a = j["dims"][0].get<int>();
    st.dim_b = j["dims"][1].get<int>();
    require(st.dim_a >= 1 && st.dim_b >= 1, ErrorCode::parse_error,
            "dims must be positive");
    require(j.contains("state") && j["state"].is_array(), ErrorCode::parse_error,
            "strategy needs a state vector");
    const Json& state = j["state"];
    require(static_cast<int>(state.size()) == st.dim_a * st.dim_b,
            ErrorCode::parse_error, "state length must equal dim_a * dim_b");
    st.state.resize(static_cast<Eigen::Index>(state.size()));
    for (std::size_t i = 0; i < state.size(); ++i) {
        st.state(static_cast<Eigen::Index>(i)) = parse_entry(state[i]);
    }
    require(j.contains("alice") && j.contains("bob"), ErrorCode::parse_error,
            "strategy needs alice and bob measurement lists");
    st.alice = party_from_json(j["alice"], st.dim_a);
    st.bob = party_from_json(j["bob"], st.dim_b);
    return st;
}

} // namespace exg
