#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/inequality.hpp"

namespace exg {

struct Hole {
    int length = 0;
    std::vector<int> vertices;  // in cycle order
    bool antihole = false;
};

enum class HoleSearchMode {
    enumerate,          // every hole up to max_len
    first_per_length,   // stop recording a length once witnessed, stop the
                        // search when every wanted length has a witness
    first_overall,      // stop at the first hole of any wanted length
};

struct HoleSearchOptions {
    HoleSearchMode mode = HoleSearchMode::enumerate;
    std::uint64_t node_budget = 2'000'000'000;
    std::size_t max_holes_per_length = 0;  // 0 keeps every hole found
    std::vector<int> lengths;              // wanted cycle lengths; empty means
                                           // all odd lengths in [5, max_len]
    std::vector<int> roots;                // restrict the canonical start
                                           // vertex; empty means all vertices
};

struct HoleReport {
    std::vector<Hole> holes;
    std::vector<std::int64_t> counts;  // counts[len], lower bounds if stopped early
    int max_len = 0;
    bool exhaustive = true;  // false only when the node budget was exhausted
    std::uint64_t nodes = 0;
};

// Induced odd cycles of length 5..max_len. Canonical-start DFS over induced
// paths: every hole is found exactly once, rooted at its minimum vertex with
// the orientation fixed by second-vertex < last-vertex.
HoleReport find_odd_holes(const ExclusivityGraph& g, int max_len = 11,
                          const HoleSearchOptions& opts = {});

// find_odd_holes on the complement, reported in original vertex ids.
HoleReport find_odd_antiholes(const ExclusivityGraph& g, int max_len = 11,
                              const HoleSearchOptions& opts = {});

// Re-checks the full adjacency pattern of a claimed chordless cycle
// (or complement cycle when antihole is set).
bool verify_hole(const ExclusivityGraph& g, const std::vector<int>& vertices,
                 bool antihole = false);

enum class PerfectStatus { perfect, imperfect, unknown };

struct PerfectVerdict {
    PerfectStatus status = PerfectStatus::unknown;
    std::optional<Hole> witness;  // present iff imperfect
    std::uint64_t nodes = 0;
};

// Strong-perfect-graph check by bounded search: imperfect on any odd hole or
// antihole; perfect only when both searches completed with max_len >= |V|.
PerfectVerdict perfect_verdict(const ExclusivityGraph& g, int max_len = 11,
                               const HoleSearchOptions& opts = {});

// Unit-weight inequality supported on a verified chordless cycle; classical
// bound floor(len/2).
LinearInequality hole_to_inequality(const std::vector<int>& hole,
                                    const ExclusivityGraph& g);

std::string hole_report_to_json(const HoleReport& r, const ExclusivityGraph& g);

struct ScanGrid {
    int l_min = 2, l_max = 4;
    int m_min = 2, m_max = 3;
    int n_min = 2, n_max = 3;
    bool tie_n_to_m = false;  // scan n = m only, ignoring n_min/n_max
};

struct ScanEntry {
    int length = 0;
    bool found = false;
    int l = 0, m = 0, n = 0;
    std::vector<int> witness;
};

struct FamilyScanResult {
    std::vector<ScanEntry> entries;  // one per odd length in [5, max_len]
    bool complete = true;            // every absence backed by a finished search
    std::uint64_t nodes = 0;
};

// First appearance of each odd hole length over the instrumental family,
// scanning grid points in lexicographic (l, m, n) order. Full instrumental
// graphs are vertex-transitive (settings and outcomes can be relabeled
// freely), so the search is rooted at vertex 0 only.
FamilyScanResult scan_family(const ScanGrid& grid, int max_len = 11,
                             const HoleSearchOptions& opts = {});

std::string scan_to_csv(const FamilyScanResult& r);

} // namespace exg
