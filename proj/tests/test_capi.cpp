#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exgraph.h"

using nlohmann::json;

namespace {

// take ownership of a char* out-parameter
std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    exg_string_free(s);
    return out;
}

} // namespace

TEST_CASE("version and initial error state") {
    CHECK(std::string(exg_version()) == "0.1.0");
    CHECK(std::string(exg_last_error()).empty());
    exg_string_free(nullptr);  // must be a no-op
}

TEST_CASE("null arguments are rejected") {
    CHECK(exg_scenario_parse(nullptr, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_scenario_to_json(nullptr, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_catalog_get(nullptr, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_alpha(nullptr, nullptr, nullptr, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_theta(nullptr, 0, 0, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_seesaw(nullptr, nullptr, nullptr, nullptr) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(exg_last_error()).size() > 0);

    // frees tolerate NULL handles
    exg_scenario_free(nullptr);
    exg_inequality_free(nullptr);
    exg_graph_free(nullptr);
}

TEST_CASE("parse failures set the error message") {
    exg_scenario* s = nullptr;
    CHECK(exg_scenario_parse("definitely not a scenario", &s) == EXG_ERROR_PARSE);
    CHECK(s == nullptr);
    CHECK(std::string(exg_last_error()).size() > 0);

    exg_inequality* q = nullptr;
    CHECK(exg_inequality_from_json("{broken", &q) == EXG_ERROR_PARSE);
    CHECK(exg_catalog_get("nope", &q) == EXG_ERROR_UNKNOWN_NAME);
}

TEST_CASE("scenario basics") {
    exg_scenario* s = nullptr;
    REQUIRE(exg_scenario_parse("instrumental:3,2,2", &s) == EXG_OK);
    int64_t events = 0, settings = 0, outcomes = 0;
    CHECK(exg_scenario_counts(s, &events, &settings, &outcomes) == EXG_OK);
    CHECK(events == 12);
    CHECK(settings == 3);
    CHECK(outcomes == 4);

    char* sj = nullptr;
    REQUIRE(exg_scenario_to_json(s, &sj) == EXG_OK);
    auto j = json::parse(take(sj));
    CHECK(j.contains("observed"));
    CHECK(j.contains("instruments"));

    // full exclusivity graph
    exg_graph* g = nullptr;
    REQUIRE(exg_graph_from_scenario(s, &g) == EXG_OK);
    int nv = 0;
    int64_t ne = 0;
    CHECK(exg_graph_counts(g, &nv, &ne) == EXG_OK);
    CHECK(nv == 12);
    CHECK(ne == 30);
    exg_graph_free(g);
    exg_scenario_free(s);
}

TEST_CASE("bonet pipeline end to end") {
    char* names_json = nullptr;
    REQUIRE(exg_catalog_names(&names_json) == EXG_OK);
    auto names = json::parse(take(names_json));
    REQUIRE(names.is_array());
    CHECK(names.size() == 4);

    exg_inequality* q = nullptr;
    REQUIRE(exg_catalog_get("bonet", &q) == EXG_OK);

    char* name = nullptr;
    double bound = 0.0, ceiling = 0.0;
    int nterms = 0;
    REQUIRE(exg_inequality_info(q, &name, &bound, &nterms, &ceiling) == EXG_OK);
    CHECK(take(name) == "bonet");
    CHECK(bound == 2.0);
    CHECK(nterms == 5);
    CHECK(ceiling == doctest::Approx(2.2071).epsilon(1e-12));

    double cmax = 0.0;
    uint64_t checked = 0;
    REQUIRE(exg_classical_max(q, &cmax, &checked) == EXG_OK);
    CHECK(cmax == 2.0);
    CHECK(checked == 32);

    exg_graph* g = nullptr;
    REQUIRE(exg_graph_support(q, &g) == EXG_OK);
    int nv = 0;
    int64_t ne = 0;
    CHECK(exg_graph_counts(g, &nv, &ne) == EXG_OK);
    CHECK(nv == 5);
    CHECK(ne == 5);

    double alpha = 0.0;
    uint64_t nodes = 0;
    char* witness = nullptr;
    REQUIRE(exg_alpha(g, &alpha, &nodes, &witness) == EXG_OK);
    CHECK(alpha == 2.0);
    auto w = json::parse(take(witness));
    CHECK(w.is_array());
    CHECK(w.size() == 2);

    exg_theta_report rep{};
    REQUIRE(exg_theta(g, 0, 0, &rep) == EXG_OK);
    CHECK(rep.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
    CHECK(rep.iterations > 0);
    CHECK(std::abs(rep.duality_gap) < 1e-6);

    exg_seesaw_options o;
    exg_seesaw_options_init(&o);
    CHECK(o.dim_a == 2);
    CHECK(o.restarts == 50);
    o.restarts = 10;
    o.seed = 3;
    double best = 0.0;
    char* report = nullptr;
    REQUIRE(exg_seesaw(q, &o, &best, &report) == EXG_OK);
    CHECK(best >= 2.2);
    CHECK(best <= std::sqrt(5.0) + 1e-6);
    auto rj = json::parse(take(report));
    CHECK(rj.at("best_value").get<double>() == best);
    CHECK(rj.at("restarts").size() == 10);

    double replay = 0.0;
    REQUIRE(exg_born_evaluate(q, rj.at("strategy").dump().c_str(), &replay) == EXG_OK);
    CHECK(std::abs(replay - best) < 1e-9);

    exg_graph_free(g);
    exg_inequality_free(q);
}

TEST_CASE("theta cycle formula validates input") {
    double v = 0.0;
    REQUIRE(exg_theta_cycle_formula(5, &v) == EXG_OK);
    CHECK(v == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(exg_theta_cycle_formula(6, &v) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_theta_cycle_formula(3, &v) == EXG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("holes and verdicts") {
    exg_graph* c7 = nullptr;
    REQUIRE(exg_graph_cycle(7, &c7) == EXG_OK);
    char* holes = nullptr;
    REQUIRE(exg_find_holes(c7, 7, 0, 0, 0, &holes) == EXG_OK);
    auto hj = json::parse(take(holes));
    CHECK(hj.at("exhaustive").get<bool>());
    CHECK(hj.at("counts").at("7").get<int>() == 1);

    char* verdict = nullptr;
    REQUIRE(exg_perfect_verdict(c7, 7, &verdict) == EXG_OK);
    auto vj = json::parse(take(verdict));
    CHECK(vj.at("status").get<std::string>() == "imperfect");
    CHECK(vj.at("witness").at("length").get<int>() == 7);

    // mining an inequality needs an actual exclusivity graph with events
    exg_scenario* s = nullptr;
    REQUIRE(exg_scenario_parse("instrumental:3,2,2", &s) == EXG_OK);
    exg_graph* g = nullptr;
    REQUIRE(exg_graph_from_scenario(s, &g) == EXG_OK);
    char* mined = nullptr;
    REQUIRE(exg_find_holes(g, 5, 0, 1, 0, &mined) == EXG_OK);
    auto mj = json::parse(take(mined));
    REQUIRE(mj.at("holes").size() > 0);
    std::vector<int> verts = mj.at("holes")[0].at("vertices").get<std::vector<int>>();
    char* iq = nullptr;
    REQUIRE(exg_hole_inequality(g, verts.data(), int(verts.size()), &iq) == EXG_OK);
    auto ij = json::parse(take(iq));
    CHECK(ij.at("classical_bound").get<double>() == 2.0);
    CHECK(ij.at("terms").size() == 5);

    int bad[3] = {0, 1, 2};
    char* none = nullptr;
    CHECK(exg_hole_inequality(g, bad, 3, &none) != EXG_OK);

    exg_graph_free(g);
    exg_scenario_free(s);
    exg_graph_free(c7);
}

TEST_CASE("cglmp helpers") {
    int a = 0;
    REQUIRE(exg_cglmp_alpha(5, 1, &a) == EXG_OK);
    CHECK(a == 4);
    REQUIRE(exg_cglmp_alpha(3, 0, &a) == EXG_OK);
    CHECK(a == 3);
    CHECK(exg_cglmp_alpha(1, 0, &a) == EXG_ERROR_INVALID_ARGUMENT);
    CHECK(exg_cglmp_alpha(3, 5, &a) == EXG_ERROR_OUT_OF_RANGE);

    exg_inequality* q = nullptr;
    REQUIRE(exg_cglmp_inequality(3, 0, &q) == EXG_OK);
    int nterms = 0;
    REQUIRE(exg_inequality_info(q, nullptr, nullptr, &nterms, nullptr) == EXG_OK);
    CHECK(nterms == 12);
    exg_inequality_free(q);
}

TEST_CASE("graph isomorphism across the chsh pair") {
    exg_inequality* qi = nullptr;
    exg_inequality* qb = nullptr;
    REQUIRE(exg_catalog_get("inst_chsh_422", &qi) == EXG_OK);
    REQUIRE(exg_catalog_get("chsh_bell", &qb) == EXG_OK);
    exg_graph* gi = nullptr;
    exg_graph* gb = nullptr;
    REQUIRE(exg_graph_support(qi, &gi) == EXG_OK);
    REQUIRE(exg_graph_support(qb, &gb) == EXG_OK);

    int iso = 0;
    char* mapping = nullptr;
    REQUIRE(exg_graph_isomorphic(gi, gb, &iso, &mapping) == EXG_OK);
    CHECK(iso == 1);
    auto mj = json::parse(take(mapping));
    CHECK(mj.size() == 8);

    char* dot = nullptr;
    REQUIRE(exg_graph_to_dot(gi, 1, &dot) == EXG_OK);
    CHECK(take(dot).find("graph") != std::string::npos);

    exg_graph_free(gi);
    exg_graph_free(gb);
    exg_inequality_free(qi);
    exg_inequality_free(qb);
}

TEST_CASE("family scan csv") {
    exg_scan_options o;
    exg_scan_options_init(&o);
    o.l_max = 3;
    o.m_max = 2;
    o.n_max = 2;
    o.max_len = 5;
    char* csv = nullptr;
    char* js = nullptr;
    REQUIRE(exg_scan_family(&o, &csv, &js) == EXG_OK);
    auto text = take(csv);
    CHECK(text.rfind("cycle_length,l,m,n,witness_vertices\n", 0) == 0);
    CHECK(text.find("5,3,2,2,") != std::string::npos);
    auto j = json::parse(take(js));
    CHECK(j.at("complete").get<bool>());
}

TEST_CASE("summary table csv") {
    char* csv = nullptr;
    REQUIRE(exg_table1_csv(3, 0, 0, 0, 1, &csv) == EXG_OK);
    auto text = take(csv);
    CHECK(text.rfind("d,k,alpha,theta\n", 0) == 0);
    CHECK(text.find("3,0,3,") != std::string::npos);
    CHECK(text.find("3,1,3,") != std::string::npos);
    CHECK(exg_table1_csv(9, 0, 0, 0, 1, &csv) == EXG_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("iv estimation") {
    double est = 0.0;
    REQUIRE(exg_iv_synthetic(1.5, 30000, 9, &est) == EXG_OK);
    CHECK(std::abs(est - 1.5) < 0.05);

    std::vector<double> x(64, 1.0), a(64), b(64);
    for (size_t i = 0; i < 64; ++i) {
        a[i] = double(i);
        b[i] = 2.0 * double(i);
    }
    CHECK(exg_iv_estimate(x.data(), a.data(), b.data(), 64, &est) == EXG_ERROR_VALIDATION);
    CHECK(std::string(exg_last_error()).size() > 0);
}
