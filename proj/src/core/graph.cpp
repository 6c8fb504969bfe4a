#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/exclusivity.hpp"

namespace exg {

namespace {

const char* kPalette[] = {
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#17becf", "#666666", "#bcbd22",
};
constexpr int kPaletteSize = 10;

} // namespace

ExclusivityGraph::ExclusivityGraph(int n, const std::vector<std::pair<int, int>>& edge_list,
                                   std::vector<double> weights) {
    require(n >= 0, ErrorCode::invalid_argument, "vertex count must be nonnegative");
    require(n <= kMaxVertices, ErrorCode::cap_exceeded,
            "graph exceeds the vertex cap of " + std::to_string(kMaxVertices));
    n_ = n;
    words_ = (n + 63) / 64;
    adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (const auto& [u, v] : edge_list) {
        require(u >= 0 && u < n && v >= 0 && v < n, ErrorCode::out_of_range,
                "edge endpoint out of range");
        require(u != v, ErrorCode::validation_error, "self-loops are not allowed");
        adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ULL << (v & 63);
        adj_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ULL << (u & 63);
    }
    edge_count_ = 0;
    for (int v = 0; v < n_; ++v) edge_count_ += degree(v);
    edge_count_ /= 2;
    if (weights.empty()) {
        weights_.assign(static_cast<std::size_t>(n_), 1.0);
    } else {
        set_weights(std::move(weights));
    }
}

ExclusivityGraph ExclusivityGraph::cycle(int n) {
    require(n >= 3, ErrorCode::invalid_argument, "a cycle needs at least three vertices");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return ExclusivityGraph(n, edges);
}

void ExclusivityGraph::check_vertex(int v) const {
    require(v >= 0 && v < n_, ErrorCode::out_of_range, "vertex index out of range");
}

bool ExclusivityGraph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
}

int ExclusivityGraph::degree(int v) const {
    check_vertex(v);
    int d = 0;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) d += __builtin_popcountll(r[w]);
    return d;
}

void ExclusivityGraph::set_weights(std::vector<double> w) {
    require(static_cast<int>(w.size()) == n_, ErrorCode::invalid_argument,
            "weight vector length does not match the vertex count");
    for (double x : w) {
        require(std::isfinite(x) && x >= 0.0, ErrorCode::validation_error,
                "vertex weights must be finite and nonnegative");
    }
    weights_ = std::move(w);
}

std::vector<std::pair<int, int>> ExclusivityGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (adjacent(u, v)) out.emplace_back(u, v);
        }
    }
    return out;
}

ExclusivityGraph ExclusivityGraph::complement() const {
    std::vector<std::pair<int, int>> comp;
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (!adjacent(u, v)) comp.emplace_back(u, v);
        }
    }
    ExclusivityGraph g(n_, comp, weights_);
    if (scenario_) g.annotate(scenario_, events_);
    return g;
}

ExclusivityGraph ExclusivityGraph::induced_subgraph(const std::vector<int>& vertices) const {
    std::set<int> seen;
    for (int v : vertices) {
        check_vertex(v);
        require(seen.insert(v).second, ErrorCode::invalid_argument,
                "duplicate vertex in induced subgraph selection");
    }
    const int m = static_cast<int>(vertices.size());
    std::vector<std::pair<int, int>> sub;
    std::vector<double> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        w[static_cast<std::size_t>(i)] = weights_[static_cast<std::size_t>(vertices[i])];
        for (int j = i + 1; j < m; ++j) {
            if (adjacent(vertices[i], vertices[j])) sub.emplace_back(i, j);
        }
    }
    ExclusivityGraph g(m, sub, std::move(w));
    if (scenario_) {
        std::vector<Event> ev(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) ev[static_cast<std::size_t>(i)] = events_[static_cast<std::size_t>(vertices[i])];
        g.annotate(scenario_, std::move(ev));
    }
    return g;
}

void ExclusivityGraph::annotate(ScenarioPtr scenario, std::vector<Event> events) {
    require(scenario != nullptr, ErrorCode::invalid_argument, "annotation needs a scenario");
    require(static_cast<int>(events.size()) == n_, ErrorCode::invalid_argument,
            "annotation needs one event per vertex");
    for (const auto& e : events) scenario->validate_event(e);
    scenario_ = std::move(scenario);
    events_ = std::move(events);
}

std::string ExclusivityGraph::vertex_label(int v) const {
    check_vertex(v);
    if (scenario_) return scenario_->event_label(events_[static_cast<std::size_t>(v)]);
    return std::to_string(v);
}

std::string ExclusivityGraph::to_dot(bool colored) const {
    require(!colored || scenario_ != nullptr, ErrorCode::invalid_argument,
            "colored export needs a scenario-annotated graph");
    std::ostringstream out;
    out << "graph exclusivity {\n";
    out << "  node [shape=ellipse];\n";
    for (int v = 0; v < n_; ++v) {
        out << "  v" << v << " [label=\"" << vertex_label(v) << "\"";
        if (weights_[static_cast<std::size_t>(v)] != 1.0) {
            out << ", weight=\"" << weights_[static_cast<std::size_t>(v)] << "\"";
        }
        out << "];\n";
    }
    if (!colored) {
        for (const auto& [u, v] : edges()) {
            out << "  v" << u << " -- v" << v << ";\n";
        }
    } else {
        auto layers = exclusivity_layers(*this);
        for (std::size_t k = 0; k < layers.size(); ++k) {
            const std::string& name = scenario_->observed()[k].name;
            const char* color = kPalette[k % kPaletteSize];
            for (const auto& [u, v] : layers[k]) {
                out << "  v" << u << " -- v" << v << " [color=\"" << color
                    << "\", tooltip=\"" << name << "\"];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

std::string ExclusivityGraph::to_json(bool colored) const {
    require(!colored || scenario_ != nullptr, ErrorCode::invalid_argument,
            "colored export needs a scenario-annotated graph");
    nlohmann::ordered_json j;
    auto verts = nlohmann::ordered_json::array();
    for (int v = 0; v < n_; ++v) verts.push_back(vertex_label(v));
    j["vertices"] = std::move(verts);
    j["weights"] = weights_;
    auto jedges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : edges()) jedges.push_back({u, v});
    j["edges"] = std::move(jedges);
    if (colored) {
        auto layers = exclusivity_layers(*this);
        auto jlayers = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < layers.size(); ++k) {
            auto le = nlohmann::ordered_json::array();
            for (const auto& [u, v] : layers[k]) le.push_back({u, v});
            jlayers[scenario_->observed()[k].name] = std::move(le);
        }
        j["layers"] = std::move(jlayers);
    }
    return j.dump();
}

} // namespace exg
