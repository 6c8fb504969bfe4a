#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/exclusivity.hpp"
#include "core/graph.hpp"
#include "core/inequality.hpp"
#include "core/scenario.hpp"
#include "core/stable_set.hpp"
#include "core/strategies.hpp"

using namespace exg;

namespace {

// Exhaustive reference: try every subset.
double brute_force_alpha(const ExclusivityGraph& g) {
    int n = g.vertex_count();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double w = 0.0;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u) {
            if (!(mask & (1u << u))) continue;
            w += g.weight(u);
            for (int v = u + 1; v < n && ok; ++v) {
                if ((mask & (1u << v)) && g.adjacent(u, v)) ok = false;
            }
        }
        if (ok && w > best) best = w;
    }
    return best;
}

bool is_stable(const ExclusivityGraph& g, const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (g.adjacent(vs[i], vs[j])) return false;
        }
    }
    return true;
}

double set_weight(const ExclusivityGraph& g, const std::vector<int>& vs) {
    double w = 0.0;
    for (int v : vs) w += g.weight(v);
    return w;
}

} // namespace

TEST_CASE("known cycles") {
    CHECK(max_stable_set(ExclusivityGraph::cycle(5)).value == 2.0);
    CHECK(max_stable_set(ExclusivityGraph::cycle(7)).value == 3.0);
    CHECK(max_stable_set(ExclusivityGraph::cycle(9)).value == 4.0);

    auto g = ExclusivityGraph::cycle(5);
    g.set_weights({2.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(max_stable_set(g).value == 3.0);
}

TEST_CASE("witness is a maximum stable set") {
    for (const char* text : {"instrumental:3,2,2", "instrumental:4,2,2", "bell:2,2,2,2"}) {
        auto g = build_exclusivity_graph(CausalScenario::parse(text));
        auto r = max_stable_set(g);
        CHECK(is_stable(g, r.vertices));
        CHECK(set_weight(g, r.vertices) == r.value);
        CHECK(r.nodes_expanded >= 1);
    }
}

TEST_CASE("full instrumental graphs have alpha = l") {
    // one event per setting can be jointly realized, two events of the same
    // setting never can
    for (int l = 2; l <= 4; ++l) {
        auto g = build_exclusivity_graph(CausalScenario::instrumental(l, 2, 3));
        CHECK(max_stable_set(g).value == double(l));
    }
}

TEST_CASE("random graphs against brute force") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 8 + int(rng() % 9);  // 8..16
        double p = (trial % 3 == 0) ? 0.2 : (trial % 3 == 1) ? 0.5 : 0.8;
        std::vector<std::pair<int, int>> edges;
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (uni(rng) < p) edges.push_back({u, v});
            }
        }
        ExclusivityGraph g(n, edges);
        if (trial % 2 == 0) {
            std::vector<double> w(static_cast<std::size_t>(n));
            for (auto& x : w) x = 0.25 + double(rng() % 8);
            g.set_weights(w);
        }
        auto r = max_stable_set(g);
        CHECK(r.value == doctest::Approx(brute_force_alpha(g)).epsilon(1e-12));
        CHECK(is_stable(g, r.vertices));
        CHECK(set_weight(g, r.vertices) == doctest::Approx(r.value).epsilon(1e-12));
    }
}

TEST_CASE("bonet triple agreement") {
    auto q = catalog_get("bonet");
    auto g = support_graph(q);
    auto alpha = max_stable_set(g);
    auto oracle = classical_max(q);
    CHECK(alpha.value == 2.0);
    CHECK(oracle.value == 2.0);
    CHECK(q.classical_bound == 2.0);
    CHECK(oracle.strategies_checked == 32);  // 2^3 response tables times 2^2
}

TEST_CASE("deterministic oracle equals alpha on catalog entries") {
    for (const auto& name : catalog_names()) {
        auto q = catalog_get(name);
        CHECK(classical_max(q).value == max_stable_set(support_graph(q)).value);
    }
}

TEST_CASE("argmax tables reproduce the maximum") {
    auto q = catalog_get("bonet");
    auto r = classical_max(q);
    REQUIRE(!r.argmax_tables.empty());
    // the tables give a deterministic response per variable; re-evaluate the
    // inequality on the induced point distribution
    auto s = q.scenario;
    auto shape = s->instrumental_shape();
    REQUIRE(shape.has_value());
    const auto& f = r.argmax_tables[std::size_t(shape->a_index)];
    const auto& g = r.argmax_tables[std::size_t(shape->b_index)];
    double value = 0.0;
    for (const auto& [event, w] : q.terms) {
        int x = event.settings[0];
        int a = event.outcomes[std::size_t(shape->a_index)];
        int b = event.outcomes[std::size_t(shape->b_index)];
        if (f[std::size_t(x)] == a && g[std::size_t(a)] == b) value += w;
    }
    CHECK(value == r.value);
}

TEST_CASE("enumeration cap") {
    auto s = CausalScenario::instrumental(12, 4, 4);
    auto e = s->event_at(0);
    auto q = make_inequality(s, {{e, 1.0}}, 1.0, "tiny");
    CHECK_THROWS_AS((void)classical_max(q), Error);
}

TEST_CASE("weighted support graph tracks coefficients") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    auto mk = [&](double w0) {
        return make_inequality(
            s,
            {{s->parse_event_label("00|0"), w0}, {s->parse_event_label("01|1"), 1.0}},
            w0, "pair");
    };
    // the two events are exclusive, so alpha picks the heavier one
    CHECK(max_stable_set(support_graph(mk(1.0))).value == 1.0);
    CHECK(max_stable_set(support_graph(mk(2.5))).value == 2.5);
    CHECK(classical_max(mk(2.5)).value == 2.5);
}
