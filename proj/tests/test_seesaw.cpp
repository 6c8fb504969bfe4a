#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/inequality.hpp"
#include "core/quantum.hpp"
#include "core/scenario.hpp"
#include "core/seesaw.hpp"
#include "core/strategies.hpp"

using namespace exg;

namespace {

using Mat = Eigen::MatrixXcd;

QuantumStrategy deterministic_strategy(const CausalScenario& s,
                                       const std::vector<int>& f,
                                       const std::vector<int>& g) {
    auto shape = s.instrumental_shape();
    REQUIRE(shape.has_value());
    QuantumStrategy st;
    st.dim_a = 2;
    st.dim_b = 2;
    st.state = Eigen::VectorXcd::Zero(4);
    st.state(0) = 1.0;
    st.alice.assign(std::size_t(shape->l),
                    std::vector<Mat>(std::size_t(shape->m), Mat::Zero(2, 2)));
    st.bob.assign(std::size_t(shape->m),
                  std::vector<Mat>(std::size_t(shape->n), Mat::Zero(2, 2)));
    for (int x = 0; x < shape->l; ++x) {
        st.alice[std::size_t(x)][std::size_t(f[std::size_t(x)])] = Mat::Identity(2, 2);
    }
    for (int a = 0; a < shape->m; ++a) {
        st.bob[std::size_t(a)][std::size_t(g[std::size_t(a)])] = Mat::Identity(2, 2);
    }
    return st;
}

} // namespace

TEST_CASE("born probabilities of a deterministic strategy") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    std::vector<int> f = {0, 1, 0};
    std::vector<int> g = {0, 1};
    auto st = deterministic_strategy(*s, f, g);
    CHECK_NOTHROW(validate_strategy(st, *s));
    auto born = born_probabilities(st, s);

    DeterministicStrategy cls(s, {f, g});
    auto ref = cls.distribution();
    for (std::int64_t i = 0; i < s->event_count(); ++i) {
        CHECK(born[i] == doctest::Approx(ref[i]).epsilon(1e-14));
    }
}

TEST_CASE("born probabilities are normalized per setting") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 3;
    opts.seed = 5;
    auto r = seesaw_lower_bound(q, opts);
    auto born = born_probabilities(r.best_strategy, s);
    for (int x = 0; x < 3; ++x) {
        double sum = 0.0;
        for (std::int64_t i = 0; i < s->event_count(); ++i) {
            if (s->event_at(i).settings[0] == x) sum += born[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("strategy validation rejects malformed inputs") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    auto good = deterministic_strategy(*s, {0, 1, 0}, {0, 1});

    auto bad_state = good;
    bad_state.state(0) = 0.5;
    CHECK_THROWS_AS(validate_strategy(bad_state, *s), Error);

    auto bad_hermitian = good;
    bad_hermitian.alice[0][0](0, 1) = std::complex<double>(0.3, 0.1);
    CHECK_THROWS_AS(validate_strategy(bad_hermitian, *s), Error);

    auto bad_complete = good;
    bad_complete.alice[0][1] = 0.5 * Mat::Identity(2, 2);
    CHECK_THROWS_AS(validate_strategy(bad_complete, *s), Error);

    auto bad_shape = good;
    bad_shape.bob.pop_back();
    CHECK_THROWS_AS(validate_strategy(bad_shape, *s), Error);

    auto bad_dim = good;
    bad_dim.state = Eigen::VectorXcd::Zero(6);
    bad_dim.state(0) = 1.0;
    CHECK_THROWS_AS(validate_strategy(bad_dim, *s), Error);
}

TEST_CASE("strategy json round-trip") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 5;
    opts.seed = 11;
    auto r = seesaw_lower_bound(q, opts);

    CHECK(strategy_is_real(r.best_strategy));
    auto text = strategy_to_json(r.best_strategy);
    auto back = strategy_from_json(text);
    CHECK(back.dim_a == r.best_strategy.dim_a);
    CHECK(back.dim_b == r.best_strategy.dim_b);

    auto p1 = born_probabilities(r.best_strategy, q.scenario);
    auto p2 = born_probabilities(back, q.scenario);
    for (std::int64_t i = 0; i < q.scenario->event_count(); ++i) {
        CHECK(p1[i] == doctest::Approx(p2[i]).epsilon(1e-13));
    }
}

TEST_CASE("bonet see-saw reaches the known quantum value") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 50;
    opts.seed = 7;
    auto r = seesaw_lower_bound(q, opts);

    // (3 + sqrt 2) / 2
    CHECK(r.best_value >= 2.2061);
    CHECK(r.best_value <= 2.2071067811865475 + 1e-6);
    CHECK(r.best_value <= std::sqrt(5.0) + 1e-6);

    REQUIRE(r.trace.size() == 50);
    CHECK_FALSE(r.trace[0].random);
    // the deterministic restart starts at and never drops below the
    // classical maximum
    CHECK(r.trace[0].value >= 2.0 - 1e-9);

    double best = 0.0;
    for (const auto& t : r.trace) {
        if (t.value > best) best = t.value;
        for (std::size_t i = 1; i < t.sweep_values.size(); ++i) {
            CHECK(t.sweep_values[i] >= t.sweep_values[i - 1] - 1e-7);
        }
        CHECK(t.sweeps >= 1);
    }
    CHECK(r.best_value == best);
    CHECK(r.best_restart >= 0);
    CHECK(r.trace[std::size_t(r.best_restart)].value == r.best_value);

    // the exported strategy reproduces the reported value
    auto born = born_probabilities(r.best_strategy, q.scenario);
    CHECK(q.evaluate(born) == doctest::Approx(r.best_value).epsilon(1e-9));
}

TEST_CASE("bell see-saw reaches the tsirelson value") {
    auto q = catalog_get("chsh_bell");
    SeesawOptions opts;
    opts.restarts = 20;
    opts.seed = 3;
    auto r = seesaw_lower_bound(q, opts);
    CHECK(r.best_value == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("thread count does not change results") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 9;
    auto a = seesaw_lower_bound(q, opts);
    opts.threads = 3;
    auto b = seesaw_lower_bound(q, opts);
    CHECK(a.best_value == b.best_value);
    CHECK(a.best_restart == b.best_restart);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].value == b.trace[i].value);
        CHECK(a.trace[i].seed == b.trace[i].seed);
    }
}

TEST_CASE("repeated runs are bitwise identical") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 8;
    opts.seed = 21;
    auto a = seesaw_lower_bound(q, opts);
    auto b = seesaw_lower_bound(q, opts);
    CHECK(a.best_value == b.best_value);
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].value == b.trace[i].value);
    }
}

TEST_CASE("complex field") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 10;
    opts.seed = 13;
    opts.complex_field = true;
    auto r = seesaw_lower_bound(q, opts);
    CHECK(r.best_value >= 2.0 - 1e-9);
    CHECK(r.best_value <= std::sqrt(5.0) + 1e-6);
    auto born = born_probabilities(r.best_strategy, q.scenario);
    CHECK(q.evaluate(born) == doctest::Approx(r.best_value).epsilon(1e-9));
}

TEST_CASE("no violation where none is possible") {
    auto family = pearl_family(2, 2, 2);
    REQUIRE(!family.empty());
    SeesawOptions opts;
    opts.restarts = 10;
    opts.seed = 17;
    auto r = seesaw_lower_bound(family[0], opts);
    CHECK(r.best_value <= 1.0 + 1e-9);
    CHECK(r.best_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("larger outcome alphabets") {
    auto q = cglmp_s(3, 0);
    SeesawOptions opts;
    opts.dim_a = 3;
    opts.dim_b = 3;
    opts.restarts = 10;
    opts.seed = 19;
    auto r = seesaw_lower_bound(q, opts);
    CHECK(r.best_value >= 3.0 - 1e-9);     // classical maximum is reachable
    CHECK(r.best_value <= 3.4641016 + 1e-6);  // theta of the support graph
}

TEST_CASE("option validation") {
    auto q = catalog_get("bonet");
    SeesawOptions opts;
    opts.restarts = 0;
    CHECK_THROWS_AS((void)seesaw_lower_bound(q, opts), Error);

    SeesawOptions big;
    big.dim_a = 5;
    CHECK_THROWS_AS((void)seesaw_lower_bound(q, big), Error);

    SeesawOptions threads;
    threads.threads = 0;
    CHECK_THROWS_AS((void)seesaw_lower_bound(q, threads), Error);
}
