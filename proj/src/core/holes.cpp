#include "core/holes.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/exclusivity.hpp"

namespace exg {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxSearchVertices = 512;

// Canonical-start DFS over induced paths. A hole is discovered exactly once:
// rooted at its minimum vertex s, walking the orientation whose second vertex
// is smaller than its last. The free set at depth k holds the vertices above
// s that are not on the path and not adjacent to any interior path vertex
// p_1..p_{k-1}; vertices adjacent to s can only close a cycle, vertices not
// adjacent to s can only extend the path, so chordlessness never needs a
// retroactive check.
class Searcher {
public:
    Searcher(const ExclusivityGraph& g, int max_len, const HoleSearchOptions& opts,
             bool antihole)
        : g_(g), n_(g.vertex_count()), words_(g.words_per_row()), max_len_(max_len),
          opts_(opts), antihole_(antihole) {
        require(n_ <= kMaxSearchVertices, ErrorCode::cap_exceeded,
                "hole search supports at most 512 vertices");
        require(max_len_ >= 5, ErrorCode::invalid_argument,
                "hole search needs max_len >= 5");

        wanted_.assign(static_cast<std::size_t>(max_len_) + 1, false);
        if (opts_.lengths.empty()) {
            for (int len = 5; len <= max_len_; len += 2) {
                wanted_[static_cast<std::size_t>(len)] = true;
            }
        } else {
            for (int len : opts_.lengths) {
                require(len >= 5 && len <= max_len_ && len % 2 == 1,
                        ErrorCode::invalid_argument,
                        "wanted cycle lengths must be odd, between 5 and max_len");
                wanted_[static_cast<std::size_t>(len)] = true;
            }
        }
        recompute_max_wanted();

        report_.max_len = max_len_;
        report_.counts.assign(static_cast<std::size_t>(max_len_) + 1, 0);
        stored_.assign(static_cast<std::size_t>(max_len_) + 1, 0);
    }

    HoleReport run() {
        if (n_ < 5 || max_wanted_ < 5) return std::move(report_);

        std::vector<int> roots = opts_.roots;
        if (roots.empty()) {
            roots.resize(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) roots[static_cast<std::size_t>(v)] = v;
        } else {
            for (int v : roots) {
                require(v >= 0 && v < n_, ErrorCode::out_of_range,
                        "search root out of range");
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        }

        slabs_.assign(static_cast<std::size_t>(max_len_ + 1) *
                          static_cast<std::size_t>(words_),
                      0);
        path_.reserve(static_cast<std::size_t>(max_len_));

        for (int s : roots) {
            if (abort_ || stopped_) break;
            std::uint64_t* free0 = slab(0);
            for (int w = 0; w < words_; ++w) free0[w] = 0;
            for (int v = s + 1; v < n_; ++v) {
                free0[v >> 6] |= std::uint64_t(1) << (v & 63);
            }
            path_.assign(1, s);
            const std::uint64_t* rs = g_.row(s);
            for (int w = 0; w < words_ && !abort_ && !stopped_; ++w) {
                std::uint64_t bits = free0[w] & rs[w];
                while (bits != 0) {
                    const int p1 = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    std::uint64_t* free1 = slab(1);
                    for (int ww = 0; ww < words_; ++ww) free1[ww] = free0[ww];
                    free1[p1 >> 6] &= ~(std::uint64_t(1) << (p1 & 63));
                    path_.resize(1);
                    path_.push_back(p1);
                    dfs(1);
                    if (abort_ || stopped_) break;
                }
            }
        }

        std::sort(report_.holes.begin(), report_.holes.end(),
                  [](const Hole& a, const Hole& b) {
                      if (a.length != b.length) return a.length < b.length;
                      return a.vertices < b.vertices;
                  });
        return std::move(report_);
    }

private:
    std::uint64_t* slab(int depth) {
        return slabs_.data() + static_cast<std::size_t>(depth) * words_;
    }

    void recompute_max_wanted() {
        max_wanted_ = 0;
        for (int len = max_len_; len >= 5; --len) {
            if (wanted_[static_cast<std::size_t>(len)]) {
                max_wanted_ = len;
                break;
            }
        }
        if (max_wanted_ == 0) stopped_ = true;
    }

    void emit(int u) {
        Hole h;
        h.length = static_cast<int>(path_.size()) + 1;
        h.vertices = path_;
        h.vertices.push_back(u);
        h.antihole = antihole_;
        require(verify_hole(g_, h.vertices, false), ErrorCode::internal,
                "hole failed verification before emission");
        report_.counts[static_cast<std::size_t>(h.length)]++;
        auto& kept = stored_[static_cast<std::size_t>(h.length)];
        if (opts_.max_holes_per_length == 0 || kept < opts_.max_holes_per_length) {
            report_.holes.push_back(std::move(h));
            ++kept;
        }
        if (opts_.mode == HoleSearchMode::first_per_length) {
            wanted_[static_cast<std::size_t>(path_.size()) + 1] = false;
            recompute_max_wanted();
        } else if (opts_.mode == HoleSearchMode::first_overall) {
            stopped_ = true;
        }
    }

    void dfs(int k) {
        if (abort_ || stopped_) return;
        if (report_.nodes++ >= opts_.node_budget) {
            report_.exhaustive = false;
            abort_ = true;
            return;
        }
        const int s = path_[0];
        const int pk = path_[static_cast<std::size_t>(k)];
        const std::uint64_t* free = slab(k);
        const std::uint64_t* rs = g_.row(s);
        const std::uint64_t* rp = g_.row(pk);

        const int close_len = k + 2;
        if (close_len >= 5 && close_len <= max_len_ &&
            wanted_[static_cast<std::size_t>(close_len)]) {
            const int p1 = path_[1];
            for (int w = 0; w < words_; ++w) {
                std::uint64_t bits = free[w] & rp[w] & rs[w];
                while (bits != 0) {
                    const int u = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (u <= p1) continue;
                    emit(u);
                    if (stopped_) return;
                    if (!wanted_[static_cast<std::size_t>(close_len)]) {
                        w = words_;
                        break;
                    }
                }
            }
        }

        if (k + 3 > max_wanted_) return;
        std::uint64_t* next = slab(k + 1);
        for (int w = 0; w < words_; ++w) next[w] = free[w] & ~rp[w];
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = free[w] & rp[w] & ~rs[w];
            while (bits != 0) {
                const int u = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                path_.push_back(u);
                dfs(k + 1);
                path_.pop_back();
                if (abort_ || stopped_) return;
                if (k + 3 > max_wanted_) return;
            }
        }
    }

    const ExclusivityGraph& g_;
    int n_ = 0;
    int words_ = 0;
    int max_len_ = 0;
    HoleSearchOptions opts_;
    bool antihole_ = false;

    std::vector<bool> wanted_;
    int max_wanted_ = 0;
    std::vector<std::uint64_t> slabs_;
    std::vector<int> path_;
    std::vector<std::size_t> stored_;
    HoleReport report_;
    bool abort_ = false;
    bool stopped_ = false;
};

} // namespace

HoleReport find_odd_holes(const ExclusivityGraph& g, int max_len,
                          const HoleSearchOptions& opts) {
    Searcher searcher(g, max_len, opts, false);
    return searcher.run();
}

HoleReport find_odd_antiholes(const ExclusivityGraph& g, int max_len,
                              const HoleSearchOptions& opts) {
    const ExclusivityGraph cg = g.complement();
    Searcher searcher(cg, max_len, opts, true);
    return searcher.run();
}

bool verify_hole(const ExclusivityGraph& g, const std::vector<int>& vertices,
                 bool antihole) {
    const int len = static_cast<int>(vertices.size());
    if (len < 4) return false;
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count()) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (int i = 0; i < len; ++i) {
        for (int j = i + 1; j < len; ++j) {
            const bool ring = (j == i + 1) || (i == 0 && j == len - 1);
            bool adj = g.adjacent(vertices[static_cast<std::size_t>(i)],
                                  vertices[static_cast<std::size_t>(j)]);
            if (antihole) adj = !adj;
            if (adj != ring) return false;
        }
    }
    return true;
}

PerfectVerdict perfect_verdict(const ExclusivityGraph& g, int max_len,
                               const HoleSearchOptions& opts) {
    HoleSearchOptions o = opts;
    o.mode = HoleSearchMode::first_overall;
    o.lengths.clear();

    PerfectVerdict verdict;
    HoleReport holes = find_odd_holes(g, max_len, o);
    verdict.nodes = holes.nodes;
    if (!holes.holes.empty()) {
        verdict.status = PerfectStatus::imperfect;
        verdict.witness = holes.holes.front();
        return verdict;
    }
    HoleReport anti = find_odd_antiholes(g, max_len, o);
    verdict.nodes += anti.nodes;
    if (!anti.holes.empty()) {
        verdict.status = PerfectStatus::imperfect;
        verdict.witness = anti.holes.front();
        return verdict;
    }
    const bool complete = holes.exhaustive && anti.exhaustive;
    verdict.status = (complete && max_len >= g.vertex_count()) ? PerfectStatus::perfect
                                                               : PerfectStatus::unknown;
    return verdict;
}

LinearInequality hole_to_inequality(const std::vector<int>& hole,
                                    const ExclusivityGraph& g) {
    require(g.scenario() != nullptr, ErrorCode::invalid_argument,
            "graph carries no scenario, cannot mine an inequality");
    require(verify_hole(g, hole, false), ErrorCode::validation_error,
            "vertex list is not a chordless cycle of this graph");
    std::vector<std::pair<Event, double>> terms;
    terms.reserve(hole.size());
    for (int v : hole) {
        terms.emplace_back(g.events()[static_cast<std::size_t>(v)], 1.0);
    }
    const int len = static_cast<int>(hole.size());
    return make_inequality(g.scenario(), std::move(terms), static_cast<double>(len / 2),
                           "mined_c" + std::to_string(len),
                           "Mined from a verified chordless cycle; unit weights; "
                           "classical bound floor(n/2).");
}

std::string hole_report_to_json(const HoleReport& r, const ExclusivityGraph& g) {
    Json j;
    j["max_len"] = r.max_len;
    j["exhaustive"] = r.exhaustive;
    j["nodes"] = r.nodes;
    Json counts = Json::object();
    for (std::size_t len = 0; len < r.counts.size(); ++len) {
        if (r.counts[len] > 0) counts[std::to_string(len)] = r.counts[len];
    }
    j["counts"] = std::move(counts);
    Json holes = Json::array();
    const bool labeled = g.scenario() != nullptr;
    for (const Hole& h : r.holes) {
        Json hj;
        hj["length"] = h.length;
        hj["kind"] = h.antihole ? "antihole" : "hole";
        hj["vertices"] = h.vertices;
        if (labeled) {
            Json events = Json::array();
            for (int v : h.vertices) events.push_back(g.vertex_label(v));
            hj["events"] = std::move(events);
        }
        holes.push_back(std::move(hj));
    }
    j["holes"] = std::move(holes);
    return j.dump(2);
}

FamilyScanResult scan_family(const ScanGrid& grid, int max_len,
                             const HoleSearchOptions& opts) {
    require(grid.l_min >= 2 && grid.m_min >= 2 && grid.n_min >= 2,
            ErrorCode::invalid_argument, "grid cardinalities start at 2");
    require(grid.l_max >= grid.l_min && grid.m_max >= grid.m_min,
            ErrorCode::invalid_argument, "empty grid");
    require(grid.tie_n_to_m || grid.n_max >= grid.n_min, ErrorCode::invalid_argument,
            "empty grid");
    require(max_len >= 5, ErrorCode::invalid_argument, "scan needs max_len >= 5");

    FamilyScanResult result;
    std::vector<int> pending;
    for (int len = 5; len <= max_len; len += 2) {
        ScanEntry e;
        e.length = len;
        result.entries.push_back(std::move(e));
        pending.push_back(len);
    }

    for (int l = grid.l_min; l <= grid.l_max && !pending.empty(); ++l) {
        for (int m = grid.m_min; m <= grid.m_max && !pending.empty(); ++m) {
            const int n_lo = grid.tie_n_to_m ? m : grid.n_min;
            const int n_hi = grid.tie_n_to_m ? m : grid.n_max;
            for (int n = n_lo; n <= n_hi && !pending.empty(); ++n) {
                auto scenario = CausalScenario::instrumental(l, m, n);
                const ExclusivityGraph graph = build_exclusivity_graph(scenario);

                HoleSearchOptions o = opts;
                o.mode = HoleSearchMode::first_per_length;
                o.lengths = pending;
                // Full instrumental graphs are vertex-transitive: any event
                // maps to any other by relabeling settings and outcomes, so a
                // hole exists iff one passes through vertex 0.
                o.roots = {0};
                const HoleReport rep = find_odd_holes(graph, max_len, o);
                result.nodes += rep.nodes;
                result.complete = result.complete && rep.exhaustive;

                for (const Hole& h : rep.holes) {
                    ScanEntry& entry =
                        result.entries[static_cast<std::size_t>((h.length - 5) / 2)];
                    if (entry.found) continue;
                    entry.found = true;
                    entry.l = l;
                    entry.m = m;
                    entry.n = n;
                    entry.witness = h.vertices;
                    pending.erase(std::remove(pending.begin(), pending.end(), h.length),
                                  pending.end());
                }
            }
        }
    }
    return result;
}

std::string scan_to_csv(const FamilyScanResult& r) {
    std::string csv = "cycle_length,l,m,n,witness_vertices\n";
    for (const ScanEntry& e : r.entries) {
        csv += std::to_string(e.length);
        if (e.found) {
            csv += "," + std::to_string(e.l) + "," + std::to_string(e.m) + "," +
                   std::to_string(e.n) + ",";
            for (std::size_t i = 0; i < e.witness.size(); ++i) {
                if (i > 0) csv += ";";
                csv += std::to_string(e.witness[i]);
            }
        } else {
            csv += ",,,,";
        }
        csv += "\n";
    }
    return csv;
}

} // namespace exg
