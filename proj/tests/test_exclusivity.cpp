#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/exclusivity.hpp"
#include "core/graph.hpp"
#include "core/scenario.hpp"

using namespace exg;

namespace {

Event ev(const CausalScenario& s, const std::string& label) {
    return s.parse_event_label(label);
}

} // namespace

TEST_CASE("pairwise exclusivity rule, instrumental") {
    auto s = CausalScenario::parse("instrumental:3,2,2");

    // same setting, different first outcome: first variable witnesses
    auto w = events_exclusive(*s, ev(*s, "00|0"), ev(*s, "10|0"));
    CHECK(w.exclusive);

    // same setting, same first outcome, different second outcome
    CHECK(events_exclusive(*s, ev(*s, "00|0"), ev(*s, "01|0")).exclusive);

    // different settings but equal first outcome with differing second:
    // the second variable's parent (the first outcome) agrees
    CHECK(events_exclusive(*s, ev(*s, "00|0"), ev(*s, "01|1")).exclusive);

    // different settings and different first outcomes: no witness.
    // the first variable's parent (the setting) differs and the second
    // variable's parent (the first outcome) differs.
    CHECK_FALSE(events_exclusive(*s, ev(*s, "00|0"), ev(*s, "11|1")).exclusive);

    // an event is never exclusive with itself
    CHECK_FALSE(events_exclusive(*s, ev(*s, "00|0"), ev(*s, "00|0")).exclusive);
}

TEST_CASE("pairwise exclusivity rule, bell") {
    auto s = CausalScenario::parse("bell:2,2,2,2");
    // labels are "ab|xy"
    CHECK(events_exclusive(*s, ev(*s, "00|00"), ev(*s, "10|00")).exclusive);
    CHECK(events_exclusive(*s, ev(*s, "00|00"), ev(*s, "10|01")).exclusive);
    CHECK(events_exclusive(*s, ev(*s, "00|00"), ev(*s, "01|10")).exclusive);
    // both outcomes differ, both settings differ: nothing witnesses
    CHECK_FALSE(events_exclusive(*s, ev(*s, "00|00"), ev(*s, "11|11")).exclusive);
    // same outcomes entirely: not exclusive
    CHECK_FALSE(events_exclusive(*s, ev(*s, "00|00"), ev(*s, "00|11")).exclusive);
}

TEST_CASE("full graph counts") {
    auto g1 = build_exclusivity_graph(CausalScenario::instrumental(3, 2, 2));
    CHECK(g1.vertex_count() == 12);
    CHECK(g1.edge_count() == 30);

    auto g2 = build_exclusivity_graph(CausalScenario::bell(2, 2, 2, 2));
    CHECK(g2.vertex_count() == 16);
    CHECK(g2.edge_count() == 56);
}

TEST_CASE("same-setting events form cliques") {
    auto s = CausalScenario::instrumental(3, 2, 2);
    auto g = build_exclusivity_graph(s);
    auto events = enumerate_events(*s);
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (events[std::size_t(u)].settings == events[std::size_t(v)].settings) {
                CHECK(g.adjacent(u, v));
            }
        }
    }
}

TEST_CASE("build strategies agree") {
    for (const char* text : {"instrumental:3,2,2", "instrumental:2,3,3", "bell:2,2,2,2"}) {
        auto s = CausalScenario::parse(text);
        auto a = build_exclusivity_graph(s, BuildStrategy::pairwise);
        auto b = build_exclusivity_graph(s, BuildStrategy::breadth_first);
        REQUIRE(a.vertex_count() == b.vertex_count());
        CHECK(a.edges() == b.edges());
    }
}

TEST_CASE("layers cover the edge set") {
    auto s = CausalScenario::instrumental(3, 2, 3);
    auto g = build_exclusivity_graph(s);
    auto layers = exclusivity_layers(g);
    REQUIRE(layers.size() == s->observed().size());

    std::set<std::pair<int, int>> from_layers;
    for (const auto& layer : layers) {
        for (auto e : layer) from_layers.insert(e);
    }
    auto edges = g.edges();
    std::set<std::pair<int, int>> from_graph(edges.begin(), edges.end());
    CHECK(from_layers == from_graph);
}

TEST_CASE("graph over an event subset keeps the given order") {
    auto s = CausalScenario::parse("instrumental:3,2,2");
    std::vector<Event> subset = {ev(*s, "00|0"), ev(*s, "11|0"), ev(*s, "00|1"),
                                 ev(*s, "10|1"), ev(*s, "01|2")};
    auto g = build_exclusivity_graph(s, subset);
    REQUIRE(g.vertex_count() == 5);
    CHECK(g.events() == subset);
    // this event set is a 5-cycle
    CHECK(g.edge_count() == 5);
    for (int v = 0; v < 5; ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("complement and induced subgraph") {
    auto g = ExclusivityGraph::cycle(5);
    auto co = g.complement();
    CHECK(co.edge_count() == 10 - 5);
    for (int u = 0; u < 5; ++u) {
        for (int v = u + 1; v < 5; ++v) {
            CHECK(co.adjacent(u, v) == !g.adjacent(u, v));
        }
    }

    auto sub = g.induced_subgraph({0, 1, 2});
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.edge_count() == 2);
    CHECK(sub.adjacent(0, 1));
    CHECK(sub.adjacent(1, 2));
    CHECK_FALSE(sub.adjacent(0, 2));
}

TEST_CASE("dot and json emission") {
    auto s = CausalScenario::instrumental(2, 2, 2);
    auto g = build_exclusivity_graph(s);
    auto dot = g.to_dot();
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("00|0") != std::string::npos);
    auto dot_colored = g.to_dot(true);
    CHECK(dot_colored.find("color") != std::string::npos);
    CHECK_FALSE(g.to_json().empty());
}

TEST_CASE("degenerate graphs") {
    ExclusivityGraph empty(0, {});
    CHECK(empty.vertex_count() == 0);
    CHECK(empty.edge_count() == 0);

    ExclusivityGraph single(1, {});
    CHECK(single.degree(0) == 0);

    CHECK_THROWS_AS(ExclusivityGraph(2, {{0, 2}}), Error);
    CHECK_THROWS_AS(ExclusivityGraph(2, {{1, 1}}), Error);
}
