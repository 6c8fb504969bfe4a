#include "core/tables.hpp"

#include <algorithm>
#include <cstdio>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/stable_set.hpp"
#include "core/theta.hpp"

namespace exg {

namespace {

struct GridRow {
    int d, k;
    double theta_reference, npa_reference;
};

constexpr GridRow kGrid[] = {
    {3, 0, 3.464, 3.333}, {3, 1, 3.464, 3.333}, {4, 0, 3.414, 3.307},
    {4, 1, 3.414, 3.307}, {5, 0, 3.431, 3.294}, {5, 1, 3.999, 3.999},
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

} // namespace

std::vector<Table1Row> table1_rows(const Table1Options& opts) {
    require(opts.max_d >= 3 && opts.max_d <= 5, ErrorCode::invalid_argument,
            "the table grid covers d = 3..5");
    std::vector<Table1Row> rows;
    for (const GridRow& grid : kGrid) {
        if (grid.d > opts.max_d) continue;
        const LinearInequality ineq = cglmp_s(grid.d, grid.k);
        const ExclusivityGraph graph = support_graph(ineq);

        Table1Row row;
        row.d = grid.d;
        row.k = grid.k;
        row.theta_reference = grid.theta_reference;
        row.npa_reference = grid.npa_reference;
        row.alpha = max_stable_set(graph).value;
        row.theta = lovasz_theta(graph).value;
        if (opts.with_seesaw) {
            SeesawOptions so;
            so.dim_a = std::min(grid.d, 4);
            so.dim_b = so.dim_a;
            so.restarts = opts.restarts;
            so.seed = opts.seed;
            so.threads = opts.threads;
            row.seesaw = seesaw_lower_bound(ineq, so).best_value;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table1_to_csv(const std::vector<Table1Row>& rows) {
    const bool with_seesaw =
        !rows.empty() && std::all_of(rows.begin(), rows.end(),
                                     [](const Table1Row& r) { return r.seesaw.has_value(); });
    std::string csv = with_seesaw ? "d,k,alpha,theta,seesaw\n" : "d,k,alpha,theta\n";
    for (const Table1Row& r : rows) {
        csv += std::to_string(r.d) + "," + std::to_string(r.k) + "," +
               format_number(r.alpha) + "," + format_number(r.theta);
        if (with_seesaw) csv += "," + format_number(*r.seesaw);
        csv += "\n";
    }
    return csv;
}

} // namespace exg
