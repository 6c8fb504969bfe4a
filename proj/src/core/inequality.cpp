#include "core/inequality.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/exclusivity.hpp"

namespace exg {

double LinearInequality::evaluate(const Distribution& d) const {
    require(scenario != nullptr, ErrorCode::invalid_argument, "inequality has no scenario");
    require(*d.scenario() == *scenario, ErrorCode::invalid_argument,
            "distribution and inequality live on different scenarios");
    double sum = 0.0;
    for (const auto& [event, coeff] : terms) {
        sum += coeff * d.probability(event);
    }
    return sum;
}

LinearInequality make_inequality(ScenarioPtr scenario,
                                 std::vector<std::pair<Event, double>> terms,
                                 double classical_bound, std::string name,
                                 std::string provenance,
                                 std::optional<double> reference_ceiling) {
    require(scenario != nullptr, ErrorCode::invalid_argument, "inequality needs a scenario");
    require(std::isfinite(classical_bound), ErrorCode::validation_error,
            "classical bound must be finite");
    LinearInequality q;
    q.scenario = std::move(scenario);
    std::map<std::int64_t, std::size_t> position;
    for (auto& [event, coeff] : terms) {
        require(std::isfinite(coeff), ErrorCode::validation_error,
                "term coefficients must be finite");
        std::int64_t idx = q.scenario->index_of(event);
        auto it = position.find(idx);
        if (it == position.end()) {
            position.emplace(idx, q.terms.size());
            q.terms.emplace_back(std::move(event), coeff);
        } else {
            q.terms[it->second].second += coeff;
        }
    }
    std::erase_if(q.terms, [](const auto& t) { return t.second == 0.0; });
    require(!q.terms.empty(), ErrorCode::validation_error,
            "inequality needs at least one term with a nonzero coefficient");
    q.classical_bound = classical_bound;
    q.name = std::move(name);
    q.provenance = std::move(provenance);
    q.reference_ceiling = reference_ceiling;
    return q;
}

ExclusivityGraph support_graph(const LinearInequality& q) {
    require(q.scenario != nullptr, ErrorCode::invalid_argument, "inequality has no scenario");
    std::vector<Event> events;
    std::vector<double> weights;
    events.reserve(q.terms.size());
    weights.reserve(q.terms.size());
    for (const auto& [event, coeff] : q.terms) {
        events.push_back(event);
        weights.push_back(coeff);
    }
    ExclusivityGraph g = build_exclusivity_graph(q.scenario, events);
    g.set_weights(std::move(weights));
    return g;
}

std::string inequality_to_json(const LinearInequality& q) {
    require(q.scenario != nullptr, ErrorCode::invalid_argument, "inequality has no scenario");
    nlohmann::ordered_json j;
    if (!q.name.empty()) j["name"] = q.name;
    j["scenario"] = nlohmann::ordered_json::parse(q.scenario->to_json());
    auto jterms = nlohmann::ordered_json::array();
    for (const auto& [event, coeff] : q.terms) {
        jterms.push_back({{"event", q.scenario->event_label(event)}, {"weight", coeff}});
    }
    j["terms"] = std::move(jterms);
    j["classical_bound"] = q.classical_bound;
    if (!q.provenance.empty()) j["provenance"] = q.provenance;
    if (q.reference_ceiling) j["ceiling"] = *q.reference_ceiling;
    return j.dump();
}

LinearInequality inequality_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("inequality JSON is malformed: ") + e.what());
    }
    try {
        require(j.is_object() && j.contains("scenario") && j.contains("terms") &&
                    j.contains("classical_bound"),
                ErrorCode::parse_error,
                "inequality JSON needs scenario, terms and classical_bound");
        ScenarioPtr scenario = CausalScenario::from_json(j["scenario"].dump());
        std::vector<std::pair<Event, double>> terms;
        for (const auto& t : j["terms"]) {
            Event e = scenario->parse_event_label(t.at("event").get<std::string>());
            terms.emplace_back(std::move(e), t.at("weight").get<double>());
        }
        std::optional<double> ceiling;
        if (j.contains("ceiling")) ceiling = j["ceiling"].get<double>();
        return make_inequality(scenario, std::move(terms), j["classical_bound"].get<double>(),
                               j.value("name", std::string()),
                               j.value("provenance", std::string()), ceiling);
    } catch (const Error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("inequality JSON has a bad field: ") + e.what());
    }
}

} // namespace exg
