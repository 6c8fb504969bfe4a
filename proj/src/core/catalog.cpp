#include "core/catalog.hpp"

#include <utility>

#include "core/error.hpp"

namespace exg {

namespace {

Event iev(int a, int b, int x) { return Event{{a, b}, {x}}; }

Event bev(int a, int b, int x, int y) { return Event{{a, b}, {x, y}}; }

std::vector<std::pair<Event, double>> cglmp_s_terms(int d, int k, double weight) {
    std::vector<std::pair<Event, double>> terms;
    terms.reserve(static_cast<std::size_t>(4 * d));
    for (int b = 0; b < d; ++b) {
        terms.emplace_back(bev((b + k) % d, b, 0, 0), weight);
        terms.emplace_back(bev((b + k) % d, b, 1, 1), weight);
    }
    for (int a = 0; a < d; ++a) {
        terms.emplace_back(bev(a, (a + k + 1) % d, 1, 0), weight);
        terms.emplace_back(bev(a, (a + k) % d, 0, 1), weight);
    }
    return terms;
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"bonet", "c7_433", "inst_chsh_422", "chsh_bell"};
}

LinearInequality catalog_get(const std::string& name) {
    if (name == "bonet") {
        auto s = CausalScenario::instrumental(3, 2, 2);
        return make_inequality(
            s,
            {{iev(0, 0, 0), 1}, {iev(1, 1, 0), 1}, {iev(0, 0, 1), 1}, {iev(1, 0, 1), 1},
             {iev(0, 1, 2), 1}},
            2.0, "bonet",
            "Bonet instrumental inequality on l=3, m=n=2; all labels 0-based.", 2.2071);
    }
    if (name == "c7_433") {
        auto s = CausalScenario::instrumental(4, 3, 3);
        return make_inequality(
            s,
            {{iev(0, 0, 2), 1}, {iev(0, 2, 3), 1}, {iev(0, 0, 0), 1}, {iev(1, 2, 0), 1},
             {iev(1, 0, 1), 1}, {iev(2, 1, 1), 1}, {iev(2, 2, 2), 1}},
            3.0, "c7_433",
            "Bonet-like instrumental inequality on l=4, m=n=3 whose support is a chordless "
            "7-cycle.",
            3.2990);
    }
    if (name == "inst_chsh_422") {
        auto s = CausalScenario::instrumental(4, 2, 2);
        return make_inequality(
            s,
            {{iev(0, 1, 2), 1}, {iev(1, 1, 2), 1}, {iev(1, 0, 3), 1}, {iev(0, 1, 3), 1},
             {iev(0, 0, 0), 1}, {iev(1, 0, 0), 1}, {iev(1, 1, 1), 1}, {iev(0, 0, 1), 1}},
            3.0, "inst_chsh_422",
            "Instrumental inequality on l=4, m=n=2 that shares the CHSH exclusivity graph.");
    }
    if (name == "chsh_bell") {
        auto s = CausalScenario::bell(2, 2, 2, 2);
        return make_inequality(
            s,
            {{bev(0, 0, 0, 0), 1}, {bev(1, 1, 0, 0), 1}, {bev(0, 0, 0, 1), 1},
             {bev(1, 1, 0, 1), 1}, {bev(0, 1, 1, 0), 1}, {bev(1, 0, 1, 0), 1},
             {bev(0, 0, 1, 1), 1}, {bev(1, 1, 1, 1), 1}},
            3.0, "chsh_bell", "CHSH inequality in probability form on the 2,2,2,2 Bell scenario.");
    }
    fail(ErrorCode::unknown_name, "unknown catalog inequality '" + name + "'");
}

std::vector<LinearInequality> pearl_family(int l, int m, int n) {
    auto s = CausalScenario::instrumental(l, m, n);
    std::vector<LinearInequality> members;
    std::int64_t functions = 1;
    for (int j = 0; j < n; ++j) functions *= l;
    members.reserve(static_cast<std::size_t>(m * functions));
    for (int i = 0; i < m; ++i) {
        for (std::int64_t f = 0; f < functions; ++f) {
            // decode f as the response function k, first B outcome most
            // significant, base l
            std::vector<int> k(static_cast<std::size_t>(n));
            std::int64_t rem = f;
            for (int j = n - 1; j >= 0; --j) {
                k[static_cast<std::size_t>(j)] = static_cast<int>(rem % l);
                rem /= l;
            }
            std::vector<std::pair<Event, double>> terms;
            std::string kdigits;
            for (int j = 0; j < n; ++j) {
                terms.emplace_back(iev(i, j, k[static_cast<std::size_t>(j)]), 1.0);
                if (j > 0 && l > 10) kdigits += '-';
                kdigits += std::to_string(k[static_cast<std::size_t>(j)]);
            }
            std::string name = "pearl_l" + std::to_string(l) + "m" + std::to_string(m) + "n" +
                               std::to_string(n) + "_i" + std::to_string(i) + "_k" + kdigits;
            members.push_back(make_inequality(
                s, std::move(terms), 1.0, std::move(name),
                "Pearl instrumental family member: sum_j P(i j | k(j)) over the n outcomes "
                "of B, for fixed A outcome i and response function k from B outcomes to "
                "settings; source labels are 1-based, normalized here to 0-based."));
        }
    }
    return members;
}

int cglmp_alpha(int d, int k) {
    require(d >= 2, ErrorCode::invalid_argument, "cglmp needs d >= 2");
    require(k >= 0 && k < d, ErrorCode::out_of_range, "cglmp block index k must satisfy 0 <= k < d");
    return (4 * k + 1) % d == 0 ? 4 : 3;
}

LinearInequality cglmp_s(int d, int k) {
    int bound = cglmp_alpha(d, k);
    auto s = CausalScenario::bell(2, 2, d, d);
    std::string name = "cglmp_s_d" + std::to_string(d) + "_k" + std::to_string(k);
    return make_inequality(s, cglmp_s_terms(d, k, 1.0), static_cast<double>(bound),
                           std::move(name),
                           "CGLMP block S^d_k in probability form, settings 0-based.");
}

LinearInequality cglmp_full(int d) {
    require(d >= 2, ErrorCode::invalid_argument, "cglmp needs d >= 2");
    auto s = CausalScenario::bell(2, 2, d, d);
    std::vector<std::pair<Event, double>> terms;
    for (int k = 0; k + 1 < d; ++k) {
        double weight = static_cast<double>(d - 1 - k);
        auto block = cglmp_s_terms(d, k, weight);
        terms.insert(terms.end(), block.begin(), block.end());
    }
    return make_inequality(s, std::move(terms), 3.0 * (d - 1),
                           "cglmp_d" + std::to_string(d),
                           "CGLMP combination sum_k (d-1-k) S^d_k with classical bound 3(d-1).");
}

} // namespace exg
