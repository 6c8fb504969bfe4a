#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "core/error.hpp"
#include "core/iv.hpp"
#include "core/scenario.hpp"

using namespace exg;

TEST_CASE("instrumental shorthand") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    CHECK(s->event_count() == 12);
    CHECK(s->setting_count() == 3);
    CHECK(s->outcome_count() == 4);
    REQUIRE(s->observed().size() == 2);
    REQUIRE(s->instruments().size() == 1);
    CHECK(s->observed()[0].name == "A");
    CHECK(s->observed()[1].name == "B");
    CHECK(s->instruments()[0].card == 3);

    auto shape = s->instrumental_shape();
    REQUIRE(shape.has_value());
    CHECK(shape->l == 3);
    CHECK(shape->m == 2);
    CHECK(shape->n == 2);
    CHECK_FALSE(s->bell_shape().has_value());
}

TEST_CASE("bell shorthand") {
    auto s = CausalScenario::parse("bell:2,2,2,2");
    CHECK(s->event_count() == 16);
    CHECK(s->setting_count() == 4);
    auto shape = s->bell_shape();
    REQUIRE(shape.has_value());
    CHECK(shape->lx == 2);
    CHECK(shape->ly == 2);
    CHECK_FALSE(s->instrumental_shape().has_value());
}

TEST_CASE("json round-trip") {
    for (const char* text : {"instrumental:3,2,2", "instrumental:2,3,4", "bell:2,3,2,2"}) {
        auto s = CausalScenario::parse(text);
        auto t = CausalScenario::parse(s->to_json());
        CHECK(*s == *t);
        CHECK(s->to_json() == t->to_json());
    }
}

TEST_CASE("event enumeration is a bijection") {
    for (const char* text : {"instrumental:3,2,3", "bell:2,3,2,2"}) {
        auto s = CausalScenario::parse(text);
        auto events = enumerate_events(*s);
        REQUIRE(std::int64_t(events.size()) == s->event_count());
        for (std::int64_t i = 0; i < s->event_count(); ++i) {
            CHECK(s->index_of(events[std::size_t(i)]) == i);
            CHECK(s->event_at(i) == events[std::size_t(i)]);
        }
    }
}

TEST_CASE("event labels round-trip") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    for (std::int64_t i = 0; i < s->event_count(); ++i) {
        auto e = s->event_at(i);
        CHECK(s->parse_event_label(s->event_label(e)) == e);
    }
    CHECK(s->event_label(s->event_at(0)) == "00|0");

    auto b = CausalScenario::parse("bell:2,2,2,2");
    for (std::int64_t i = 0; i < b->event_count(); ++i) {
        auto e = b->event_at(i);
        CHECK(b->parse_event_label(b->event_label(e)) == e);
    }
}

TEST_CASE("invalid scenarios are rejected") {
    CHECK_THROWS_AS((void)CausalScenario::parse("instrumental:1,2,2"), Error);
    CHECK_THROWS_AS((void)CausalScenario::parse("instrumental:3,2"), Error);
    CHECK_THROWS_AS((void)CausalScenario::parse("nonsense"), Error);

    // A->B->A cycle
    const char* cyclic = R"({
      "observed": [
        {"name": "A", "card": 2, "parents": ["X", "B"]},
        {"name": "B", "card": 2, "parents": ["A"]}
      ],
      "instruments": [{"name": "X", "card": 2}],
      "latent": "L"
    })";
    CHECK_THROWS_AS((void)CausalScenario::parse(cyclic), Error);

    // the format gives instruments no parent slot; stray keys are ignored
    const char* inst_extra = R"({
      "observed": [{"name": "A", "card": 2, "parents": ["X"]}],
      "instruments": [{"name": "X", "card": 2, "parents": ["A"]}],
      "latent": "L"
    })";
    CHECK_NOTHROW((void)CausalScenario::parse(inst_extra));

    const char* unknown_parent = R"({
      "observed": [{"name": "A", "card": 2, "parents": ["Q"]}],
      "instruments": [{"name": "X", "card": 2}],
      "latent": "L"
    })";
    CHECK_THROWS_AS((void)CausalScenario::parse(unknown_parent), Error);
}

TEST_CASE("event validation") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    Event bad;
    bad.settings = {3};
    bad.outcomes = {0, 0};
    CHECK_THROWS_AS(s->validate_event(bad), Error);
    bad.settings = {0};
    bad.outcomes = {2, 0};
    CHECK_THROWS_AS(s->validate_event(bad), Error);
}

TEST_CASE("distribution validation") {
    auto s = CausalScenario::parse("instrumental:2,2,2");
    std::vector<double> uniform(8, 0.25);
    Distribution d(s, uniform);
    CHECK(d[0] == 0.25);

    std::vector<double> negative(8, 0.25);
    negative[0] = -0.01;
    CHECK_THROWS_AS(Distribution(s, negative), Error);

    std::vector<double> off(8, 0.25);
    off[0] = 0.30;
    CHECK_THROWS_AS(Distribution(s, off), Error);

    std::vector<double> short_vec(7, 0.25);
    CHECK_THROWS_AS(Distribution(s, short_vec), Error);
}

TEST_CASE("iv estimate on exact linear data") {
    std::vector<IvSample> samples;
    for (int i = 0; i < 100; ++i) {
        double x = i % 7;
        double a = 2.0 * x + (i % 3);
        double b = 1.5 * a;
        samples.push_back({x, a, b});
    }
    CHECK(estimate_iv_strength(samples) == doctest::Approx(1.5).epsilon(1e-9));

    // constant B has zero covariance with X
    for (auto& sm : samples) sm.b = 4.0;
    CHECK(estimate_iv_strength(samples) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("iv estimate is offset invariant") {
    auto samples = synthetic_linear_iv(0.8, 5000, 42);
    double base = estimate_iv_strength(samples);
    for (auto& sm : samples) sm.b += 7.0;
    CHECK(estimate_iv_strength(samples) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("iv weak instrument") {
    std::vector<IvSample> samples;
    for (int i = 0; i < 50; ++i) {
        samples.push_back({1.0, double(i % 4), double(i % 5)});
    }
    CHECK_THROWS_AS((void)estimate_iv_strength(samples), Error);
    CHECK_THROWS_AS((void)estimate_iv_strength({}), Error);
}

TEST_CASE("synthetic model recovery") {
    double est = estimate_iv_strength(synthetic_linear_iv(1.5, 20000, 5));
    CHECK(std::abs(est - 1.5) < 0.05);
}
