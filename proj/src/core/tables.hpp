#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/seesaw.hpp"

namespace exg {

// One row of the CGLMP S^d_k summary table: computed alpha and theta of the
// support graph, optional see-saw lower bound, plus the published reference
// values carried along as annotations (never fed back into any computation).
struct Table1Row {
    int d = 0;
    int k = 0;
    double alpha = 0.0;
    double theta = 0.0;
    std::optional<double> seesaw;
    double theta_reference = 0.0;
    double npa_reference = 0.0;  // second-level hierarchy ceiling, reference only
};

struct Table1Options {
    int max_d = 5;  // keep grid rows with d <= max_d
    bool with_seesaw = false;
    int restarts = 50;
    std::uint64_t seed = 1;
    int threads = 1;
};

// Rows of the published (d, k) grid: (3,0) (3,1) (4,0) (4,1) (5,0) (5,1).
// See-saw local dimensions are min(d, 4) per side.
std::vector<Table1Row> table1_rows(const Table1Options& opts = {});

// CSV with columns d,k,alpha,theta[,seesaw]; 7 significant digits.
std::string table1_to_csv(const std::vector<Table1Row>& rows);

} // namespace exg
