#include "exgraph.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/exclusivity.hpp"
#include "core/graph.hpp"
#include "core/holes.hpp"
#include "core/inequality.hpp"
#include "core/isomorphism.hpp"
#include "core/iv.hpp"
#include "core/quantum.hpp"
#include "core/scenario.hpp"
#include "core/seesaw.hpp"
#include "core/stable_set.hpp"
#include "core/strategies.hpp"
#include "core/tables.hpp"
#include "core/theta.hpp"

using nlohmann::json;

struct exg_scenario {
    exg::ScenarioPtr p;
};

struct exg_inequality {
    exg::LinearInequality q;
};

struct exg_graph {
    exg::ExclusivityGraph g;
};

namespace {

thread_local std::string t_last_error;

exg_status map_code(exg::ErrorCode code) {
    switch (code) {
        case exg::ErrorCode::invalid_argument: return EXG_ERROR_INVALID_ARGUMENT;
        case exg::ErrorCode::parse_error: return EXG_ERROR_PARSE;
        case exg::ErrorCode::validation_error: return EXG_ERROR_VALIDATION;
        case exg::ErrorCode::out_of_range: return EXG_ERROR_OUT_OF_RANGE;
        case exg::ErrorCode::cap_exceeded: return EXG_ERROR_CAP_EXCEEDED;
        case exg::ErrorCode::solver_failure: return EXG_ERROR_SOLVER_FAILURE;
        case exg::ErrorCode::unknown_name: return EXG_ERROR_UNKNOWN_NAME;
        case exg::ErrorCode::internal: return EXG_ERROR_INTERNAL;
    }
    return EXG_ERROR_INTERNAL;
}

template <typename Fn>
exg_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return EXG_OK;
    } catch (const exg::Error& e) {
        t_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return EXG_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return EXG_ERROR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return EXG_ERROR_INTERNAL;
    }
}

exg_status fail_null(const char* what) {
    t_last_error = std::string(what) + " must not be null";
    return EXG_ERROR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_out(char** slot, const std::string& s) {
    if (slot != nullptr) *slot = dup_string(s);
}

json hole_to_json(const exg::Hole& h) {
    return json{{"length", h.length},
                {"antihole", h.antihole},
                {"vertices", h.vertices}};
}

exg::HoleSearchOptions make_hole_options(int first_per_length,
                                         int64_t node_budget) {
    exg::HoleSearchOptions o;
    if (first_per_length != 0) o.mode = exg::HoleSearchMode::first_per_length;
    if (node_budget > 0) o.node_budget = static_cast<std::uint64_t>(node_budget);
    return o;
}

} // namespace

const char* exg_version(void) { return "0.1.0"; }

const char* exg_last_error(void) { return t_last_error.c_str(); }

void exg_string_free(char* s) { delete[] s; }

/* ---- scenarios ---------------------------------------------------- */

exg_status exg_scenario_parse(const char* text, exg_scenario** out) {
    if (text == nullptr) return fail_null("text");
    if (out == nullptr) return fail_null("out");
    return guarded([&] {
        auto p = exg::CausalScenario::parse(text);
        *out = new exg_scenario{std::move(p)};
    });
}

void exg_scenario_free(exg_scenario* s) { delete s; }

exg_status exg_scenario_to_json(const exg_scenario* s, char** out_json) {
    if (s == nullptr) return fail_null("scenario");
    if (out_json == nullptr) return fail_null("out_json");
    return guarded([&] { set_out(out_json, s->p->to_json()); });
}

exg_status exg_scenario_counts(const exg_scenario* s, int64_t* out_events,
                               int64_t* out_settings, int64_t* out_outcomes) {
    if (s == nullptr) return fail_null("scenario");
    return guarded([&] {
        if (out_events != nullptr) *out_events = s->p->event_count();
        if (out_settings != nullptr) *out_settings = s->p->setting_count();
        if (out_outcomes != nullptr) *out_outcomes = s->p->outcome_count();
    });
}

/* ---- inequalities and the catalog ---------------------------------- */

exg_status exg_catalog_names(char** out_json) {
    if (out_json == nullptr) return fail_null("out_json");
    return guarded([&] {
        json names = exg::catalog_names();
        set_out(out_json, names.dump());
    });
}

exg_status exg_catalog_get(const char* name, exg_inequality** out) {
    if (name == nullptr) return fail_null("name");
    if (out == nullptr) return fail_null("out");
    return guarded([&] { *out = new exg_inequality{exg::catalog_get(name)}; });
}

exg_status exg_inequality_from_json(const char* json_text, exg_inequality** out) {
    if (json_text == nullptr) return fail_null("json_text");
    if (out == nullptr) return fail_null("out");
    return guarded([&] {
        *out = new exg_inequality{exg::inequality_from_json(json_text)};
    });
}

exg_status exg_inequality_to_json(const exg_inequality* q, char** out_json) {
    if (q == nullptr) return fail_null("inequality");
    if (out_json == nullptr) return fail_null("out_json");
    return guarded([&] { set_out(out_json, exg::inequality_to_json(q->q)); });
}

void exg_inequality_free(exg_inequality* q) { delete q; }

exg_status exg_inequality_info(const exg_inequality* q, char** out_name,
                               double* out_classical_bound, int* out_term_count,
                               double* out_reference_ceiling) {
    if (q == nullptr) return fail_null("inequality");
    return guarded([&] {
        if (out_name != nullptr) *out_name = dup_string(q->q.name);
        if (out_classical_bound != nullptr) *out_classical_bound = q->q.classical_bound;
        if (out_term_count != nullptr) *out_term_count = static_cast<int>(q->q.terms.size());
        if (out_reference_ceiling != nullptr) {
            *out_reference_ceiling = q->q.reference_ceiling
                                         ? *q->q.reference_ceiling
                                         : std::numeric_limits<double>::quiet_NaN();
        }
    });
}

exg_status exg_classical_max(const exg_inequality* q, double* out_value,
                             uint64_t* out_strategies_checked) {
    if (q == nullptr) return fail_null("inequality");
    return guarded([&] {
        auto r = exg::classical_max(q->q);
        if (out_value != nullptr) *out_value = r.value;
        if (out_strategies_checked != nullptr) *out_strategies_checked = r.strategies_checked;
    });
}

exg_status exg_cglmp_alpha(int d, int k, int* out_alpha) {
    if (out_alpha == nullptr) return fail_null("out_alpha");
    return guarded([&] { *out_alpha = exg::cglmp_alpha(d, k); });
}

exg_status exg_cglmp_inequality(int d, int k, exg_inequality** out) {
    if (out == nullptr) return fail_null("out");
    return guarded([&] { *out = new exg_inequality{exg::cglmp_s(d, k)}; });
}

/* ---- exclusivity graphs -------------------------------------------- */

exg_status exg_graph_from_scenario(const exg_scenario* s, exg_graph** out) {
    if (s == nullptr) return fail_null("scenario");
    if (out == nullptr) return fail_null("out");
    return guarded([&] {
        *out = new exg_graph{exg::build_exclusivity_graph(s->p)};
    });
}

exg_status exg_graph_support(const exg_inequality* q, exg_graph** out) {
    if (q == nullptr) return fail_null("inequality");
    if (out == nullptr) return fail_null("out");
    return guarded([&] { *out = new exg_graph{exg::support_graph(q->q)}; });
}

exg_status exg_graph_cycle(int n, exg_graph** out) {
    if (out == nullptr) return fail_null("out");
    return guarded([&] { *out = new exg_graph{exg::ExclusivityGraph::cycle(n)}; });
}

void exg_graph_free(exg_graph* g) { delete g; }

exg_status exg_graph_counts(const exg_graph* g, int* out_vertices,
                            int64_t* out_edges) {
    if (g == nullptr) return fail_null("graph");
    return guarded([&] {
        if (out_vertices != nullptr) *out_vertices = g->g.vertex_count();
        if (out_edges != nullptr) *out_edges = g->g.edge_count();
    });
}

exg_status exg_graph_to_dot(const exg_graph* g, int colored, char** out_dot) {
    if (g == nullptr) return fail_null("graph");
    if (out_dot == nullptr) return fail_null("out_dot");
    return guarded([&] { set_out(out_dot, g->g.to_dot(colored != 0)); });
}

exg_status exg_graph_to_json(const exg_graph* g, int colored, char** out_json) {
    if (g == nullptr) return fail_null("graph");
    if (out_json == nullptr) return fail_null("out_json");
    return guarded([&] { set_out(out_json, g->g.to_json(colored != 0)); });
}

exg_status exg_graph_isomorphic(const exg_graph* a, const exg_graph* b,
                                int* out_isomorphic, char** out_mapping_json) {
    if (a == nullptr || b == nullptr) return fail_null("graph");
    return guarded([&] {
        auto mapping = exg::find_isomorphism(a->g, b->g);
        if (out_isomorphic != nullptr) *out_isomorphic = mapping ? 1 : 0;
        if (out_mapping_json != nullptr) {
            json j = mapping ? json(*mapping) : json(nullptr);
            set_out(out_mapping_json, j.dump());
        }
    });
}

/* ---- classical bound ------------------------------------------------ */

exg_status exg_alpha(const exg_graph* g, double* out_value,
                     uint64_t* out_nodes, char** out_witness_json) {
    if (g == nullptr) return fail_null("graph");
    return guarded([&] {
        auto r = exg::max_stable_set(g->g);
        if (out_value != nullptr) *out_value = r.value;
        if (out_nodes != nullptr) *out_nodes = r.nodes_expanded;
        if (out_witness_json != nullptr) {
            set_out(out_witness_json, json(r.vertices).dump());
        }
    });
}

/* ---- quantum upper bound -------------------------------------------- */

exg_status exg_theta(const exg_graph* g, double tol, int max_iter,
                     exg_theta_report* out) {
    if (g == nullptr) return fail_null("graph");
    if (out == nullptr) return fail_null("out");
    return guarded([&] {
        exg::ThetaOptions opts;
        if (tol > 0.0) opts.tol = tol;
        if (max_iter > 0) opts.max_iter = max_iter;
        auto r = exg::lovasz_theta(g->g, opts);
        out->value = r.value;
        out->primal_value = r.primal_value;
        out->primal_residual = r.primal_residual;
        out->dual_residual = r.dual_residual;
        out->duality_gap = r.duality_gap;
        out->iterations = r.iterations;
    });
}

exg_status exg_theta_cycle_formula(int n, double* out_value) {
    if (out_value == nullptr) return fail_null("out_value");
    return guarded([&] { *out_value = exg::theta_cycle_formula(n); });
}

/* ---- quantum lower bound (see-saw) ----------------------------------- */

void exg_seesaw_options_init(exg_seesaw_options* o) {
    if (o == nullptr) return;
    exg::SeesawOptions d;
    o->dim_a = d.dim_a;
    o->dim_b = d.dim_b;
    o->restarts = d.restarts;
    o->seed = d.seed;
    o->complex_field = d.complex_field ? 1 : 0;
    o->sweep_cap = d.sweep_cap;
    o->rel_improvement = d.rel_improvement;
    o->threads = d.threads;
}

exg_status exg_seesaw(const exg_inequality* q, const exg_seesaw_options* o,
                      double* out_best_value, char** out_report_json) {
    if (q == nullptr) return fail_null("inequality");
    return guarded([&] {
        exg::SeesawOptions opts;
        if (o != nullptr) {
            opts.dim_a = o->dim_a;
            opts.dim_b = o->dim_b;
            opts.restarts = o->restarts;
            opts.seed = o->seed;
            opts.complex_field = o->complex_field != 0;
            opts.sweep_cap = o->sweep_cap;
            opts.rel_improvement = o->rel_improvement;
            opts.threads = o->threads;
        }
        auto r = exg::seesaw_lower_bound(q->q, opts);
        if (out_best_value != nullptr) *out_best_value = r.best_value;
        if (out_report_json != nullptr) {
            json restarts = json::array();
            for (const auto& t : r.trace) {
                restarts.push_back(json{{"index", t.index},
                                        {"random", t.random},
                                        {"seed", t.seed},
                                        {"value", t.value},
                                        {"sweeps", t.sweeps}});
            }
            json report{{"best_value", r.best_value},
                        {"best_restart", r.best_restart},
                        {"restarts", std::move(restarts)},
                        {"strategy", json::parse(exg::strategy_to_json(r.best_strategy))}};
            set_out(out_report_json, report.dump());
        }
    });
}

exg_status exg_born_evaluate(const exg_inequality* q, const char* strategy_json,
                             double* out_value) {
    if (q == nullptr) return fail_null("inequality");
    if (strategy_json == nullptr) return fail_null("strategy_json");
    if (out_value == nullptr) return fail_null("out_value");
    return guarded([&] {
        auto st = exg::strategy_from_json(strategy_json);
        exg::validate_strategy(st, *q->q.scenario);
        auto d = exg::born_probabilities(st, q->q.scenario);
        *out_value = q->q.evaluate(d);
    });
}

/* ---- structural diagnostics ------------------------------------------ */

exg_status exg_find_holes(const exg_graph* g, int max_len, int antiholes,
                          int first_per_length, int64_t node_budget,
                          char** out_report_json) {
    if (g == nullptr) return fail_null("graph");
    if (out_report_json == nullptr) return fail_null("out_report_json");
    return guarded([&] {
        auto opts = make_hole_options(first_per_length, node_budget);
        auto r = antiholes != 0 ? exg::find_odd_antiholes(g->g, max_len, opts)
                                : exg::find_odd_holes(g->g, max_len, opts);
        set_out(out_report_json, exg::hole_report_to_json(r, g->g));
    });
}

exg_status exg_perfect_verdict(const exg_graph* g, int max_len,
                               char** out_json) {
    if (g == nullptr) return fail_null("graph");
    if (out_json == nullptr) return fail_null("out_json");
    return guarded([&] {
        auto v = exg::perfect_verdict(g->g, max_len);
        const char* status = v.status == exg::PerfectStatus::perfect ? "perfect"
                             : v.status == exg::PerfectStatus::imperfect
                                 ? "imperfect"
                                 : "unknown";
        json j{{"status", status},
               {"witness", v.witness ? hole_to_json(*v.witness) : json(nullptr)},
               {"nodes", v.nodes}};
        set_out(out_json, j.dump());
    });
}

exg_status exg_hole_inequality(const exg_graph* g, const int* vertices,
                               int length, char** out_inequality_json) {
    if (g == nullptr) return fail_null("graph");
    if (vertices == nullptr) return fail_null("vertices");
    if (out_inequality_json == nullptr) return fail_null("out_inequality_json");
    return guarded([&] {
        exg::require(length > 0, exg::ErrorCode::invalid_argument,
                     "hole length must be positive");
        std::vector<int> hole(vertices, vertices + length);
        auto q = exg::hole_to_inequality(hole, g->g);
        set_out(out_inequality_json, exg::inequality_to_json(q));
    });
}

/* ---- instrumental family scan ----------------------------------------- */

void exg_scan_options_init(exg_scan_options* o) {
    if (o == nullptr) return;
    exg::ScanGrid grid;
    o->l_min = grid.l_min;
    o->l_max = grid.l_max;
    o->m_min = grid.m_min;
    o->m_max = grid.m_max;
    o->n_min = grid.n_min;
    o->n_max = grid.n_max;
    o->tie_n_to_m = grid.tie_n_to_m ? 1 : 0;
    o->max_len = 11;
    o->node_budget = 0;
}

exg_status exg_scan_family(const exg_scan_options* o, char** out_csv,
                           char** out_json) {
    return guarded([&] {
        exg::ScanGrid grid;
        int max_len = 11;
        exg::HoleSearchOptions opts;
        if (o != nullptr) {
            grid.l_min = o->l_min;
            grid.l_max = o->l_max;
            grid.m_min = o->m_min;
            grid.m_max = o->m_max;
            grid.n_min = o->n_min;
            grid.n_max = o->n_max;
            grid.tie_n_to_m = o->tie_n_to_m != 0;
            max_len = o->max_len;
            if (o->node_budget > 0) {
                opts.node_budget = static_cast<std::uint64_t>(o->node_budget);
            }
        }
        auto r = exg::scan_family(grid, max_len, opts);
        if (out_csv != nullptr) set_out(out_csv, exg::scan_to_csv(r));
        if (out_json != nullptr) {
            json entries = json::array();
            for (const auto& e : r.entries) {
                json row{{"length", e.length}, {"found", e.found}};
                if (e.found) {
                    row["l"] = e.l;
                    row["m"] = e.m;
                    row["n"] = e.n;
                    row["witness"] = e.witness;
                }
                entries.push_back(std::move(row));
            }
            json j{{"entries", std::move(entries)},
                   {"complete", r.complete},
                   {"nodes", r.nodes}};
            set_out(out_json, j.dump());
        }
    });
}

/* ---- summary table ----------------------------------------------------- */

exg_status exg_table1_csv(int max_d, int with_seesaw, int restarts,
                          uint64_t seed, int threads, char** out_csv) {
    if (out_csv == nullptr) return fail_null("out_csv");
    return guarded([&] {
        exg::Table1Options opts;
        opts.max_d = max_d;
        opts.with_seesaw = with_seesaw != 0;
        if (restarts > 0) opts.restarts = restarts;
        opts.seed = seed;
        if (threads > 0) opts.threads = threads;
        auto rows = exg::table1_rows(opts);
        set_out(out_csv, exg::table1_to_csv(rows));
    });
}

/* ---- instrumental-variable estimation ---------------------------------- */

exg_status exg_iv_estimate(const double* x, const double* a, const double* b,
                           size_t count, double* out_gamma) {
    if (x == nullptr || a == nullptr || b == nullptr) return fail_null("samples");
    if (out_gamma == nullptr) return fail_null("out_gamma");
    return guarded([&] {
        std::vector<exg::IvSample> samples(count);
        for (size_t i = 0; i < count; ++i) {
            samples[i] = exg::IvSample{x[i], a[i], b[i]};
        }
        *out_gamma = exg::estimate_iv_strength(samples);
    });
}

exg_status exg_iv_synthetic(double gamma, size_t count, uint64_t seed,
                            double* out_estimate) {
    if (out_estimate == nullptr) return fail_null("out_estimate");
    return guarded([&] {
        auto samples = exg::synthetic_linear_iv(gamma, count, seed);
        *out_estimate = exg::estimate_iv_strength(samples);
    });
}
