#include "core/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace exg {

namespace {

constexpr double kProbTol = 1e-9;
constexpr double kSumTol = 1e-9;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) {
        fail(ErrorCode::cap_exceeded, "scenario event count overflows a 64-bit integer");
    }
    return a * b;
}

void check_name(const std::string& name, const char* what) {
    require(!name.empty(), ErrorCode::validation_error,
            std::string(what) + " name must be nonempty");
    for (char c : name) {
        if (c == '|' || c == ',' || c == ':' || std::isspace(static_cast<unsigned char>(c))) {
            fail(ErrorCode::validation_error,
                 std::string(what) + " name '" + name + "' contains a reserved character");
        }
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(item, &pos);
        } catch (const std::exception&) {
            fail(ErrorCode::parse_error, "expected an integer, got '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) pos++;
        require(pos == item.size(), ErrorCode::parse_error,
                "trailing characters after integer in '" + item + "'");
        out.push_back(value);
    }
    require(!text.empty() && text.back() != ',', ErrorCode::parse_error,
            "trailing comma in '" + text + "'");
    return out;
}

std::vector<int> parse_value_tuple(const std::string& side, bool comma_mode) {
    std::vector<int> vals;
    if (side.find(',') != std::string::npos || (comma_mode && !side.empty())) {
        std::stringstream ss(side);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t pos = 0;
                vals.push_back(std::stoi(item, &pos));
                require(pos == item.size(), ErrorCode::parse_error,
                        "bad value '" + item + "' in event label");
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                fail(ErrorCode::parse_error, "bad value '" + item + "' in event label");
            }
        }
    } else {
        for (char c : side) {
            require(std::isdigit(static_cast<unsigned char>(c)) != 0, ErrorCode::parse_error,
                    std::string("bad character '") + c + "' in event label");
            vals.push_back(c - '0');
        }
    }
    return vals;
}

} // namespace

std::shared_ptr<const CausalScenario> CausalScenario::make(std::vector<ObservedVar> observed,
                                                           std::vector<InstrumentVar> instruments,
                                                           std::string latent) {
    auto s = std::shared_ptr<CausalScenario>(new CausalScenario());
    s->observed_ = std::move(observed);
    s->instruments_ = std::move(instruments);
    s->latent_ = std::move(latent);
    s->finalize();
    return s;
}

void CausalScenario::finalize() {
    require(!observed_.empty(), ErrorCode::validation_error,
            "scenario needs at least one observed variable");
    check_name(latent_, "latent");

    std::set<std::string> names{latent_};
    for (const auto& v : instruments_) {
        check_name(v.name, "instrument");
        require(names.insert(v.name).second, ErrorCode::validation_error,
                "duplicate variable name '" + v.name + "'");
        require(v.card >= 2, ErrorCode::validation_error,
                "instrument '" + v.name + "' needs cardinality at least 2");
    }
    for (const auto& v : observed_) {
        check_name(v.name, "observed");
        require(names.insert(v.name).second, ErrorCode::validation_error,
                "duplicate variable name '" + v.name + "'");
        require(v.card >= 2, ErrorCode::validation_error,
                "observed '" + v.name + "' needs cardinality at least 2");
    }

    parent_refs_.assign(observed_.size(), {});
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        std::set<std::string> seen;
        for (const auto& pname : observed_[i].parents) {
            require(pname != latent_, ErrorCode::validation_error,
                    "the latent variable is an implicit parent and must not be listed");
            require(pname != observed_[i].name, ErrorCode::validation_error,
                    "variable '" + pname + "' cannot be its own parent");
            require(seen.insert(pname).second, ErrorCode::validation_error,
                    "duplicate parent '" + pname + "' for '" + observed_[i].name + "'");
            bool found = false;
            for (std::size_t k = 0; k < instruments_.size(); ++k) {
                if (instruments_[k].name == pname) {
                    parent_refs_[i].push_back({true, static_cast<int>(k)});
                    found = true;
                    break;
                }
            }
            if (!found) {
                for (std::size_t k = 0; k < observed_.size(); ++k) {
                    if (observed_[k].name == pname) {
                        parent_refs_[i].push_back({false, static_cast<int>(k)});
                        found = true;
                        break;
                    }
                }
            }
            require(found, ErrorCode::validation_error,
                    "unknown parent '" + pname + "' for '" + observed_[i].name + "'");
        }
    }

    // Kahn's algorithm over the observed-to-observed edges.
    std::vector<int> indegree(observed_.size(), 0);
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        for (const auto& p : parent_refs_[i]) {
            if (!p.is_instrument) indegree[i]++;
        }
    }
    std::vector<int> queue;
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        if (indegree[i] == 0) queue.push_back(static_cast<int>(i));
    }
    topo_order_.clear();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        topo_order_.push_back(v);
        for (std::size_t i = 0; i < observed_.size(); ++i) {
            for (const auto& p : parent_refs_[i]) {
                if (!p.is_instrument && p.index == v && --indegree[i] == 0) {
                    queue.push_back(static_cast<int>(i));
                }
            }
        }
    }
    require(topo_order_.size() == observed_.size(), ErrorCode::validation_error,
            "parent links contain a cycle");

    outcome_count_ = 1;
    comma_labels_ = false;
    for (const auto& v : observed_) {
        outcome_count_ = checked_mul(outcome_count_, v.card);
        comma_labels_ = comma_labels_ || v.card > 10;
    }
    setting_count_ = 1;
    for (const auto& v : instruments_) {
        setting_count_ = checked_mul(setting_count_, v.card);
        comma_labels_ = comma_labels_ || v.card > 10;
    }
    event_count_ = checked_mul(setting_count_, outcome_count_);
}

std::shared_ptr<const CausalScenario> CausalScenario::instrumental(int l, int m, int n) {
    require(l >= 2 && m >= 2 && n >= 2, ErrorCode::validation_error,
            "instrumental scenario needs l,m,n >= 2");
    return make({{"A", m, {"X"}}, {"B", n, {"A"}}}, {{"X", l}}, "L");
}

std::shared_ptr<const CausalScenario> CausalScenario::bell(int lx, int ly, int m, int n) {
    require(lx >= 2 && ly >= 2 && m >= 2 && n >= 2, ErrorCode::validation_error,
            "bell scenario needs all cardinalities >= 2");
    return make({{"A", m, {"X"}}, {"B", n, {"Y"}}}, {{"X", lx}, {"Y", ly}}, "L");
}

std::shared_ptr<const CausalScenario> CausalScenario::parse(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
    require(i < text.size(), ErrorCode::parse_error, "empty scenario description");
    if (text[i] == '{') return from_json(text);

    auto colon = text.find(':');
    require(colon != std::string::npos, ErrorCode::parse_error,
            "scenario shorthand needs the form name:args");
    std::string head = text.substr(i, colon - i);
    std::vector<int> args = parse_int_list(text.substr(colon + 1));
    if (head == "instrumental") {
        require(args.size() == 3, ErrorCode::parse_error,
                "instrumental shorthand takes three cardinalities l,m,n");
        return instrumental(args[0], args[1], args[2]);
    }
    if (head == "bell") {
        if (args.size() == 3) return bell(args[0], args[0], args[1], args[2]);
        require(args.size() == 4, ErrorCode::parse_error,
                "bell shorthand takes lx,ly,m,n or l,m,n");
        return bell(args[0], args[1], args[2], args[3]);
    }
    fail(ErrorCode::unknown_name, "unknown scenario family '" + head + "'");
}

std::shared_ptr<const CausalScenario> CausalScenario::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("scenario JSON is malformed: ") + e.what());
    }
    try {
        require(j.is_object() && j.contains("observed") && j["observed"].is_array(),
                ErrorCode::parse_error, "scenario JSON needs an 'observed' array");
        std::vector<ObservedVar> observed;
        for (const auto& o : j["observed"]) {
            ObservedVar v;
            v.name = o.at("name").get<std::string>();
            v.card = o.at("card").get<int>();
            if (o.contains("parents")) {
                v.parents = o["parents"].get<std::vector<std::string>>();
            }
            observed.push_back(std::move(v));
        }
        std::vector<InstrumentVar> instruments;
        if (j.contains("instruments")) {
            for (const auto& o : j["instruments"]) {
                instruments.push_back({o.at("name").get<std::string>(), o.at("card").get<int>()});
            }
        }
        std::string latent = j.value("latent", std::string("L"));
        return make(std::move(observed), std::move(instruments), std::move(latent));
    } catch (const Error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("scenario JSON has a bad field: ") + e.what());
    }
}

std::string CausalScenario::to_json() const {
    nlohmann::ordered_json j;
    j["observed"] = nlohmann::ordered_json::array();
    for (const auto& v : observed_) {
        j["observed"].push_back({{"name", v.name}, {"card", v.card}, {"parents", v.parents}});
    }
    j["instruments"] = nlohmann::ordered_json::array();
    for (const auto& v : instruments_) {
        j["instruments"].push_back({{"name", v.name}, {"card", v.card}});
    }
    j["latent"] = latent_;
    return j.dump();
}

void CausalScenario::validate_event(const Event& e) const {
    require(e.outcomes.size() == observed_.size() && e.settings.size() == instruments_.size(),
            ErrorCode::invalid_argument, "event does not match the scenario's variable lists");
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        require(e.outcomes[i] >= 0 && e.outcomes[i] < observed_[i].card, ErrorCode::out_of_range,
                "outcome for '" + observed_[i].name + "' is out of range");
    }
    for (std::size_t i = 0; i < instruments_.size(); ++i) {
        require(e.settings[i] >= 0 && e.settings[i] < instruments_[i].card, ErrorCode::out_of_range,
                "setting for '" + instruments_[i].name + "' is out of range");
    }
}

Event CausalScenario::event_at(std::int64_t index) const {
    require(index >= 0 && index < event_count_, ErrorCode::out_of_range,
            "event index out of range");
    Event e;
    e.outcomes.resize(observed_.size());
    e.settings.resize(instruments_.size());
    std::int64_t o_idx = index % outcome_count_;
    std::int64_t s_idx = index / outcome_count_;
    for (std::size_t i = observed_.size(); i-- > 0;) {
        e.outcomes[i] = static_cast<int>(o_idx % observed_[i].card);
        o_idx /= observed_[i].card;
    }
    for (std::size_t i = instruments_.size(); i-- > 0;) {
        e.settings[i] = static_cast<int>(s_idx % instruments_[i].card);
        s_idx /= instruments_[i].card;
    }
    return e;
}

std::int64_t CausalScenario::index_of(const Event& e) const {
    validate_event(e);
    std::int64_t s_idx = 0;
    for (std::size_t i = 0; i < instruments_.size(); ++i) {
        s_idx = s_idx * instruments_[i].card + e.settings[i];
    }
    std::int64_t o_idx = 0;
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        o_idx = o_idx * observed_[i].card + e.outcomes[i];
    }
    return s_idx * outcome_count_ + o_idx;
}

std::string CausalScenario::event_label(const Event& e) const {
    validate_event(e);
    std::string out;
    auto append = [&](const std::vector<int>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (comma_labels_ && i > 0) out += ',';
            out += std::to_string(vals[i]);
        }
    };
    append(e.outcomes);
    out += '|';
    append(e.settings);
    return out;
}

Event CausalScenario::parse_event_label(const std::string& label) const {
    auto bar = label.find('|');
    require(bar != std::string::npos && label.find('|', bar + 1) == std::string::npos,
            ErrorCode::parse_error, "event label needs exactly one '|'");
    Event e;
    e.outcomes = parse_value_tuple(label.substr(0, bar), comma_labels_);
    e.settings = parse_value_tuple(label.substr(bar + 1), comma_labels_);
    validate_event(e);
    return e;
}

std::optional<InstrumentalShape> CausalScenario::instrumental_shape() const {
    if (instruments_.size() != 1 || observed_.size() != 2) return std::nullopt;
    for (int a = 0; a < 2; ++a) {
        int b = 1 - a;
        const auto& pa = parent_refs_[a];
        const auto& pb = parent_refs_[b];
        if (pa.size() == 1 && pa[0].is_instrument &&
            pb.size() == 1 && !pb[0].is_instrument && pb[0].index == a) {
            InstrumentalShape s;
            s.l = instruments_[0].card;
            s.m = observed_[a].card;
            s.n = observed_[b].card;
            s.a_index = a;
            s.b_index = b;
            return s;
        }
    }
    return std::nullopt;
}

std::optional<BellShape> CausalScenario::bell_shape() const {
    if (instruments_.size() != 2 || observed_.size() != 2) return std::nullopt;
    const auto& pa = parent_refs_[0];
    const auto& pb = parent_refs_[1];
    if (pa.size() != 1 || !pa[0].is_instrument) return std::nullopt;
    if (pb.size() != 1 || !pb[0].is_instrument) return std::nullopt;
    if (pa[0].index == pb[0].index) return std::nullopt;
    BellShape s;
    s.x_index = pa[0].index;
    s.y_index = pb[0].index;
    s.a_index = 0;
    s.b_index = 1;
    s.lx = instruments_[s.x_index].card;
    s.ly = instruments_[s.y_index].card;
    s.m = observed_[0].card;
    s.n = observed_[1].card;
    return s;
}

bool CausalScenario::operator==(const CausalScenario& other) const {
    return observed_ == other.observed_ && instruments_ == other.instruments_ &&
           latent_ == other.latent_;
}

std::vector<Event> enumerate_events(const CausalScenario& s) {
    std::vector<Event> out;
    out.reserve(static_cast<std::size_t>(s.event_count()));
    for (std::int64_t i = 0; i < s.event_count(); ++i) {
        out.push_back(s.event_at(i));
    }
    return out;
}

Distribution::Distribution(ScenarioPtr scenario, std::vector<double> probs)
    : scenario_(std::move(scenario)), p_(std::move(probs)) {
    require(scenario_ != nullptr, ErrorCode::invalid_argument, "distribution needs a scenario");
    require(static_cast<std::int64_t>(p_.size()) == scenario_->event_count(),
            ErrorCode::invalid_argument, "distribution length does not match the event count");
    const std::int64_t oc = scenario_->outcome_count();
    for (std::int64_t s = 0; s < scenario_->setting_count(); ++s) {
        double sum = 0.0;
        for (std::int64_t o = 0; o < oc; ++o) {
            double v = p_[static_cast<std::size_t>(s * oc + o)];
            require(v >= -kProbTol, ErrorCode::validation_error,
                    "probabilities must be nonnegative");
            sum += v;
        }
        require(std::abs(sum - 1.0) <= kSumTol, ErrorCode::validation_error,
                "probabilities must sum to one for every setting");
    }
}

double Distribution::probability(const Event& e) const {
    return p_[static_cast<std::size_t>(scenario_->index_of(e))];
}

} // namespace exg
