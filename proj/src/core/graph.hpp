#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/scenario.hpp"

namespace exg {

// Vertex-weighted undirected graph stored as bitset adjacency rows. When the
// graph was built from a causal scenario each vertex carries its event.
// Immutable after construction apart from the weight vector.
class ExclusivityGraph {
public:
    static constexpr int kMaxVertices = 16384;

    ExclusivityGraph(int n, const std::vector<std::pair<int, int>>& edge_list,
                     std::vector<double> weights = {});

    static ExclusivityGraph cycle(int n);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }
    bool adjacent(int u, int v) const;
    int degree(int v) const;
    double weight(int v) const { return weights_[static_cast<std::size_t>(v)]; }
    const std::vector<double>& weights() const { return weights_; }
    void set_weights(std::vector<double> w);
    std::vector<std::pair<int, int>> edges() const;

    ExclusivityGraph complement() const;
    ExclusivityGraph induced_subgraph(const std::vector<int>& vertices) const;

    // Raw adjacency row for solvers: words_per_row() 64-bit words per vertex.
    const std::uint64_t* row(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words_; }
    int words_per_row() const { return words_; }

    const ScenarioPtr& scenario() const { return scenario_; }
    const std::vector<Event>& events() const { return events_; }
    void annotate(ScenarioPtr scenario, std::vector<Event> events);
    std::string vertex_label(int v) const;

    // colored=true additionally reports, per observed variable, the edges that
    // variable witnesses; needs a scenario annotation.
    std::string to_dot(bool colored = false) const;
    std::string to_json(bool colored = false) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    int words_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<double> weights_;
    ScenarioPtr scenario_;
    std::vector<Event> events_;
};

} // namespace exg
