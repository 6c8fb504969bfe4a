#ifndef EXGRAPH_H
#define EXGRAPH_H

/* C interface to the exclusivity-graph toolkit.
 *
 * Conventions:
 *   - Every fallible call returns an exg_status; EXG_OK is 0.
 *   - On failure the thread-local message from exg_last_error() describes
 *     what went wrong; out-parameters are left untouched.
 *   - Out-parameters may be NULL when the caller does not want that value.
 *   - Strings returned through char** are heap-allocated and must be
 *     released with exg_string_free().
 *   - Handles are opaque; each *_free accepts NULL.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exg_status {
    EXG_OK = 0,
    EXG_ERROR_INVALID_ARGUMENT = 1,
    EXG_ERROR_PARSE = 2,
    EXG_ERROR_VALIDATION = 3,
    EXG_ERROR_OUT_OF_RANGE = 4,
    EXG_ERROR_CAP_EXCEEDED = 5,
    EXG_ERROR_SOLVER_FAILURE = 6,
    EXG_ERROR_UNKNOWN_NAME = 7,
    EXG_ERROR_INTERNAL = 8
} exg_status;

/* Library version, e.g. "0.1.0". Static storage, do not free. */
const char* exg_version(void);

/* Message for the most recent failing call on this thread. Static until the
 * next failing call on the same thread, do not free. Empty string if no
 * failure has occurred yet. */
const char* exg_last_error(void);

/* Release a string returned through a char** out-parameter. */
void exg_string_free(char* s);

typedef struct exg_scenario exg_scenario;
typedef struct exg_inequality exg_inequality;
typedef struct exg_graph exg_graph;

/* ---- scenarios ---------------------------------------------------- */

/* Accepts the JSON scenario format or the shorthands
 * "instrumental:l,m,n" and "bell:lx,ly,m,n". */
exg_status exg_scenario_parse(const char* text, exg_scenario** out);
void exg_scenario_free(exg_scenario* s);
exg_status exg_scenario_to_json(const exg_scenario* s, char** out_json);
exg_status exg_scenario_counts(const exg_scenario* s, int64_t* out_events,
                               int64_t* out_settings, int64_t* out_outcomes);

/* ---- inequalities and the catalog ---------------------------------- */

/* JSON array of catalog entry names. */
exg_status exg_catalog_names(char** out_json);
exg_status exg_catalog_get(const char* name, exg_inequality** out);
exg_status exg_inequality_from_json(const char* json_text, exg_inequality** out);
exg_status exg_inequality_to_json(const exg_inequality* q, char** out_json);
void exg_inequality_free(exg_inequality* q);

/* out_reference_ceiling is NaN when the entry carries no reference ceiling. */
exg_status exg_inequality_info(const exg_inequality* q, char** out_name,
                               double* out_classical_bound, int* out_term_count,
                               double* out_reference_ceiling);

/* Exhaustive deterministic-strategy maximum (independent of the
 * stable-set solver; the two cross-check each other). */
exg_status exg_classical_max(const exg_inequality* q, double* out_value,
                             uint64_t* out_strategies_checked);

/* Closed-form classical bound of the CGLMP-style inequality S^d_k. */
exg_status exg_cglmp_alpha(int d, int k, int* out_alpha);

/* The CGLMP-style inequality S^d_k itself (d >= 2, 0 <= k < d). */
exg_status exg_cglmp_inequality(int d, int k, exg_inequality** out);

/* ---- exclusivity graphs -------------------------------------------- */

exg_status exg_graph_from_scenario(const exg_scenario* s, exg_graph** out);
exg_status exg_graph_support(const exg_inequality* q, exg_graph** out);
exg_status exg_graph_cycle(int n, exg_graph** out);
void exg_graph_free(exg_graph* g);
exg_status exg_graph_counts(const exg_graph* g, int* out_vertices,
                            int64_t* out_edges);
/* colored != 0 colors edges by the observed variable witnessing them. */
exg_status exg_graph_to_dot(const exg_graph* g, int colored, char** out_dot);
exg_status exg_graph_to_json(const exg_graph* g, int colored, char** out_json);
exg_status exg_graph_isomorphic(const exg_graph* a, const exg_graph* b,
                                int* out_isomorphic, char** out_mapping_json);

/* ---- classical bound ------------------------------------------------ */

/* Exact maximum-weight stable set. out_witness_json is a JSON array of
 * vertex ids forming one optimal stable set. */
exg_status exg_alpha(const exg_graph* g, double* out_value,
                     uint64_t* out_nodes, char** out_witness_json);

/* ---- quantum upper bound -------------------------------------------- */

typedef struct exg_theta_report {
    double value;           /* certified bound (dual objective) */
    double primal_value;
    double primal_residual;
    double dual_residual;
    double duality_gap;
    int iterations;
} exg_theta_report;

/* Lovasz theta of the weighted graph. tol <= 0 or max_iter <= 0 select the
 * solver defaults (1e-9, 200). */
exg_status exg_theta(const exg_graph* g, double tol, int max_iter,
                     exg_theta_report* out);

/* Closed-form theta of an odd cycle C_n, n odd and >= 5. */
exg_status exg_theta_cycle_formula(int n, double* out_value);

/* ---- quantum lower bound (see-saw) ----------------------------------- */

typedef struct exg_seesaw_options {
    int dim_a;               /* local dimension, Alice side (default 2) */
    int dim_b;               /* local dimension, Bob side (default 2) */
    int restarts;            /* default 50; restart 0 is deterministic */
    uint64_t seed;           /* master seed (default 0) */
    int complex_field;       /* 0 = real iterates (default), 1 = complex */
    int sweep_cap;           /* max sweeps per restart (default 500) */
    double rel_improvement;  /* convergence threshold (default 1e-10) */
    int threads;             /* worker threads (default 1); results are
                                identical for every thread count */
} exg_seesaw_options;

void exg_seesaw_options_init(exg_seesaw_options* o);

/* Variational lower bound on the quantum value. out_report_json carries
 * {best_value, best_restart, restarts:[...], strategy:{...}}; the strategy
 * block round-trips through exg_born_evaluate. */
exg_status exg_seesaw(const exg_inequality* q, const exg_seesaw_options* o,
                      double* out_best_value, char** out_report_json);

/* Evaluate an inequality on the Born probabilities of an explicit strategy
 * (JSON in the same format the see-saw report embeds). */
exg_status exg_born_evaluate(const exg_inequality* q, const char* strategy_json,
                             double* out_value);

/* ---- structural diagnostics ------------------------------------------ */

/* Induced odd holes (antiholes != 0: odd antiholes) of length 5..max_len.
 * first_per_length != 0 stops recording a length once witnessed.
 * node_budget <= 0 selects the default (2e9). Report JSON carries
 * holes, per-length counts, exhaustive flag and node count. */
exg_status exg_find_holes(const exg_graph* g, int max_len, int antiholes,
                          int first_per_length, int64_t node_budget,
                          char** out_report_json);

/* Strong-perfect-graph verdict by bounded search. JSON:
 * {status:"perfect"|"imperfect"|"unknown", witness?, nodes}. Perfect is
 * only reported when max_len >= vertex count and both searches finished. */
exg_status exg_perfect_verdict(const exg_graph* g, int max_len,
                               char** out_json);

/* Unit-weight inequality supported on a verified chordless cycle of g;
 * fails if the vertices do not form one. */
exg_status exg_hole_inequality(const exg_graph* g, const int* vertices,
                               int length, char** out_inequality_json);

/* ---- instrumental family scan ----------------------------------------- */

typedef struct exg_scan_options {
    int l_min, l_max;    /* instrument cardinality range (defaults 2..4) */
    int m_min, m_max;    /* first outcome cardinality range (defaults 2..3) */
    int n_min, n_max;    /* second outcome cardinality range (defaults 2..3) */
    int tie_n_to_m;      /* scan n = m only, ignoring n_min/n_max */
    int max_len;         /* largest odd hole length wanted (default 11) */
    int64_t node_budget; /* <= 0 selects the default */
} exg_scan_options;

void exg_scan_options_init(exg_scan_options* o);

/* First (l, m, n) in lexicographic order exhibiting each odd hole length.
 * CSV columns: cycle_length,l,m,n,witness_vertices. */
exg_status exg_scan_family(const exg_scan_options* o, char** out_csv,
                           char** out_json);

/* ---- summary table ----------------------------------------------------- */

/* CSV rows d,k,alpha,theta[,seesaw] of the CGLMP S^d_k grid, d <= max_d
 * (3 <= max_d <= 5). with_seesaw != 0 appends a see-saw column computed
 * with the given restarts/seed/threads. */
exg_status exg_table1_csv(int max_d, int with_seesaw, int restarts,
                          uint64_t seed, int threads, char** out_csv);

/* ---- instrumental-variable estimation ---------------------------------- */

/* Covariance-ratio estimate Cov(X,B)/Cov(X,A) from count samples.
 * Fails with EXG_ERROR_VALIDATION when the instrument is weak
 * (|Cov(X,A)| <= 1e-12). */
exg_status exg_iv_estimate(const double* x, const double* a, const double* b,
                           size_t count, double* out_gamma);

/* Draw from the synthetic confounded model A = X + noise,
 * B = gamma*A + confounder and return the recovered estimate. */
exg_status exg_iv_synthetic(double gamma, size_t count, uint64_t seed,
                            double* out_estimate);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXGRAPH_H */
