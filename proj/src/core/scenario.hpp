#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace exg {

struct ObservedVar {
    std::string name;
    int card = 0;
    std::vector<std::string> parents;   // observed variables or instruments

    bool operator==(const ObservedVar&) const = default;
};

struct InstrumentVar {
    std::string name;
    int card = 0;

    bool operator==(const InstrumentVar&) const = default;
};

// One joint event: an outcome for every observed variable together with a
// value for every instrument, aligned with the scenario's declaration order.
struct Event {
    std::vector<int> outcomes;
    std::vector<int> settings;

    bool operator==(const Event&) const = default;
};

struct InstrumentalShape {
    int l = 0, m = 0, n = 0;                     // |X|, |A|, |B|
    int a_index = 0, b_index = 0;                // positions in observed()
};

struct BellShape {
    int lx = 0, ly = 0, m = 0, n = 0;
    int x_index = 0, y_index = 0;                // positions in instruments()
    int a_index = 0, b_index = 0;                // positions in observed()
};

// A single-latent causal structure: one latent common cause (implicit parent
// of every observed variable), plus explicit parent links between the
// remaining variables. Immutable once constructed.
class CausalScenario {
public:
    struct ParentRef {
        bool is_instrument = false;
        int index = 0;
    };

    // Accepts inline JSON (first non-space character '{') or one of the
    // shorthands "instrumental:l,m,n", "bell:l,m,n", "bell:lx,ly,m,n".
    static std::shared_ptr<const CausalScenario> parse(const std::string& text);
    static std::shared_ptr<const CausalScenario> from_json(const std::string& json_text);
    static std::shared_ptr<const CausalScenario> instrumental(int l, int m, int n);
    static std::shared_ptr<const CausalScenario> bell(int lx, int ly, int m, int n);
    static std::shared_ptr<const CausalScenario> make(std::vector<ObservedVar> observed,
                                                      std::vector<InstrumentVar> instruments,
                                                      std::string latent);

    const std::vector<ObservedVar>& observed() const { return observed_; }
    const std::vector<InstrumentVar>& instruments() const { return instruments_; }
    const std::string& latent_name() const { return latent_; }

    // Events are ordered lexicographically with the setting tuple as the
    // outer index and the outcome tuple as the inner one; within each tuple
    // the first declared variable is the most significant digit.
    std::int64_t event_count() const { return event_count_; }
    std::int64_t setting_count() const { return setting_count_; }
    std::int64_t outcome_count() const { return outcome_count_; }
    Event event_at(std::int64_t index) const;
    std::int64_t index_of(const Event& e) const;
    void validate_event(const Event& e) const;

    std::string event_label(const Event& e) const;
    Event parse_event_label(const std::string& label) const;

    std::string to_json() const;

    // Parent lists resolved to indices, aligned with observed().
    const std::vector<std::vector<ParentRef>>& parent_refs() const { return parent_refs_; }
    // Observed indices in dependency order (parents before children).
    const std::vector<int>& topo_order() const { return topo_order_; }

    std::optional<InstrumentalShape> instrumental_shape() const;
    std::optional<BellShape> bell_shape() const;

    bool operator==(const CausalScenario& other) const;

private:
    CausalScenario() = default;
    void finalize();

    std::vector<ObservedVar> observed_;
    std::vector<InstrumentVar> instruments_;
    std::string latent_;
    std::vector<std::vector<ParentRef>> parent_refs_;
    std::vector<int> topo_order_;
    std::int64_t event_count_ = 0;
    std::int64_t setting_count_ = 0;
    std::int64_t outcome_count_ = 0;
    bool comma_labels_ = false;
};

using ScenarioPtr = std::shared_ptr<const CausalScenario>;

std::vector<Event> enumerate_events(const CausalScenario& s);

// Conditional outcome distribution p(outcomes | settings) over a scenario's
// events. Entries must be nonnegative and sum to one for every setting.
class Distribution {
public:
    Distribution(ScenarioPtr scenario, std::vector<double> probs);

    double operator[](std::int64_t event_index) const { return p_[static_cast<std::size_t>(event_index)]; }
    double probability(const Event& e) const;
    const std::vector<double>& values() const { return p_; }
    const ScenarioPtr& scenario() const { return scenario_; }

private:
    ScenarioPtr scenario_;
    std::vector<double> p_;
};

} // namespace exg
