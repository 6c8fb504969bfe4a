#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/exclusivity.hpp"
#include "core/graph.hpp"
#include "core/inequality.hpp"
#include "core/scenario.hpp"
#include "core/sdp.hpp"
#include "core/stable_set.hpp"
#include "core/theta.hpp"

using namespace exg;

TEST_CASE("cycle formula values") {
    CHECK(theta_cycle_formula(5) == doctest::Approx(2.23606797749979).epsilon(1e-12));
    CHECK(theta_cycle_formula(7) == doctest::Approx(3.317667207394096).epsilon(1e-12));
    CHECK(theta_cycle_formula(9) == doctest::Approx(4.360089581434065).epsilon(1e-12));
    CHECK(theta_cycle_formula(11) == doctest::Approx(5.386302911967422).epsilon(1e-12));
    CHECK_THROWS_AS((void)theta_cycle_formula(4), Error);
    CHECK_THROWS_AS((void)theta_cycle_formula(6), Error);
    CHECK_THROWS_AS((void)theta_cycle_formula(3), Error);
}

TEST_CASE("theta of odd cycles matches the closed form") {
    for (int n : {5, 7, 9, 11}) {
        auto r = lovasz_theta(ExclusivityGraph::cycle(n));
        CHECK(std::abs(r.value - theta_cycle_formula(n)) < 1e-6);
        CHECK(r.duality_gap < 1e-7);
    }
}

TEST_CASE("theta of C5 is the square root of five") {
    auto r = lovasz_theta(ExclusivityGraph::cycle(5));
    CHECK(std::abs(r.value - std::sqrt(5.0)) < 1e-6);
}

TEST_CASE("product with the complement") {
    // for vertex-transitive graphs theta(G) * theta(complement G) = n
    for (int n : {5, 7, 9}) {
        auto g = ExclusivityGraph::cycle(n);
        double a = lovasz_theta(g).value;
        double b = lovasz_theta(g.complement()).value;
        CHECK(a * b == doctest::Approx(double(n)).epsilon(1e-4));
    }
}

TEST_CASE("simple graphs") {
    // complete graph: theta = 1; empty graph: theta = n
    ExclusivityGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(lovasz_theta(k4).value == doctest::Approx(1.0).epsilon(1e-7));

    ExclusivityGraph e5(5, {});
    CHECK(lovasz_theta(e5).value == doctest::Approx(5.0).epsilon(1e-7));

    ExclusivityGraph single(1, {});
    CHECK(lovasz_theta(single).value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("sandwich bound on support graphs") {
    for (const auto& name : catalog_names()) {
        auto g = support_graph(catalog_get(name));
        double alpha = max_stable_set(g).value;
        double theta = lovasz_theta(g).value;
        CHECK(alpha <= theta + 1e-6);
    }
}

TEST_CASE("perfect full graphs have theta equal to alpha") {
    for (const char* text : {"instrumental:2,2,2", "instrumental:2,3,3"}) {
        auto g = build_exclusivity_graph(CausalScenario::parse(text));
        double alpha = max_stable_set(g).value;
        double theta = lovasz_theta(g).value;
        CHECK(std::abs(theta - alpha) < 1e-6);
    }
}

TEST_CASE("weight homogeneity") {
    auto g = ExclusivityGraph::cycle(5);
    double base = lovasz_theta(g).value;
    g.set_weights({2.25, 2.25, 2.25, 2.25, 2.25});
    CHECK(lovasz_theta(g).value == doctest::Approx(2.25 * base).epsilon(1e-6));
}

TEST_CASE("weighted theta respects vertex weights") {
    auto g = ExclusivityGraph::cycle(5);
    g.set_weights({3.0, 1.0, 1.0, 1.0, 1.0});
    double theta = lovasz_theta(g).value;
    double alpha = max_stable_set(g).value;  // vertex 0 with one of 2, 3
    CHECK(alpha == 4.0);
    // at this weighting the heavy vertex dominates and theta collapses to alpha
    CHECK(std::abs(theta - 4.0) < 1e-6);
}

TEST_CASE("relabeling invariance") {
    auto g = ExclusivityGraph::cycle(7);
    auto h = g.induced_subgraph({3, 5, 0, 2, 6, 1, 4});
    CHECK(lovasz_theta(h).value == doctest::Approx(lovasz_theta(g).value).epsilon(1e-7));
}

TEST_CASE("psd witness is primal feasible") {
    auto g = ExclusivityGraph::cycle(5);
    auto r = lovasz_theta(g);
    const auto& b = r.psd_witness;
    REQUIRE(b.rows() == 5);
    CHECK(std::abs(b.trace() - 1.0) < 1e-6);
    for (auto [u, v] : g.edges()) {
        CHECK(std::abs(b(u, v)) < 1e-6);
    }
    auto eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b).eigenvalues();
    CHECK(eig.minCoeff() > -1e-7);
}

TEST_CASE("theta sdp problem shape") {
    auto g = ExclusivityGraph::cycle(5);
    auto p = theta_sdp_problem(g);
    CHECK(p.objective.dim() == 5);
    // one trace constraint plus one per edge
    CHECK(p.constraint_mats.size() == 1 + 5);
    CHECK(p.constraint_rhs.size() == p.constraint_mats.size());
}

TEST_CASE("support graph of the bonet inequality") {
    auto g = support_graph(catalog_get("bonet"));
    CHECK(std::abs(lovasz_theta(g).value - std::sqrt(5.0)) < 1e-6);
}
