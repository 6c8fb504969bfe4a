#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/stat.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "exgraph.h"

using nlohmann::json;

namespace {

struct ToolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(exg_status st) {
    if (st != EXG_OK) throw ToolError(exg_last_error());
}

struct CStr {
    char* p = nullptr;
    CStr() = default;
    CStr(const CStr&) = delete;
    CStr& operator=(const CStr&) = delete;
    ~CStr() { exg_string_free(p); }
    std::string str() const { return p != nullptr ? std::string(p) : std::string(); }
};

struct ScenarioHandle {
    exg_scenario* h = nullptr;
    ScenarioHandle() = default;
    ScenarioHandle(const ScenarioHandle&) = delete;
    ScenarioHandle& operator=(const ScenarioHandle&) = delete;
    ~ScenarioHandle() { exg_scenario_free(h); }
};

struct IneqHandle {
    exg_inequality* h = nullptr;
    IneqHandle() = default;
    IneqHandle(const IneqHandle&) = delete;
    IneqHandle& operator=(const IneqHandle&) = delete;
    ~IneqHandle() { exg_inequality_free(h); }
};

struct GraphHandle {
    exg_graph* h = nullptr;
    GraphHandle() = default;
    GraphHandle(const GraphHandle&) = delete;
    GraphHandle& operator=(const GraphHandle&) = delete;
    ~GraphHandle() { exg_graph_free(h); }
};

bool file_exists(const std::string& path) {
    struct stat st {};
    return stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ToolError("cannot read file: " + path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ToolError("cannot open output file: " + path);
    f << text;
    if (!f) throw ToolError("failed writing output file: " + path);
}

/* A --scenario value is either a shorthand / inline JSON string or the path
 * of a scenario file. */
std::string scenario_text(const std::string& value) {
    if (file_exists(value)) return read_file(value);
    return value;
}

struct Source {
    std::string scenario;
    std::string ineq_name;
    std::string ineq_file;
};

void add_source_options(CLI::App* cmd, Source& s, bool with_scenario) {
    if (with_scenario) {
        cmd->add_option("--scenario", s.scenario,
                        "Scenario: shorthand (instrumental:l,m,n or "
                        "bell:lx,ly,m,n), inline JSON, or a file path");
    }
    cmd->add_option("--ineq", s.ineq_name,
                    "Catalog inequality name, or cglmp:d,k");
    cmd->add_option("--ineq-file", s.ineq_file, "Inequality JSON file");
}

void load_inequality(const Source& s, IneqHandle& q) {
    if (!s.ineq_name.empty() && !s.ineq_file.empty()) {
        throw ToolError("--ineq and --ineq-file are mutually exclusive");
    }
    if (!s.ineq_file.empty()) {
        check(exg_inequality_from_json(read_file(s.ineq_file).c_str(), &q.h));
        return;
    }
    int d = 0;
    int k = 0;
    char tail = 0;
    if (std::sscanf(s.ineq_name.c_str(), "cglmp:%d,%d%c", &d, &k, &tail) == 2) {
        check(exg_cglmp_inequality(d, k, &q.h));
        return;
    }
    check(exg_catalog_get(s.ineq_name.c_str(), &q.h));
}

/* Builds the working graph: the support graph when an inequality is given,
 * otherwise the full exclusivity graph of the scenario. When both are given
 * the scenario must match the one the inequality is defined on. Returns the
 * scenario echo for the report. */
json resolve_graph(const Source& s, GraphHandle& g, IneqHandle& q) {
    bool has_ineq = !s.ineq_name.empty() || !s.ineq_file.empty();
    if (!has_ineq && s.scenario.empty()) {
        throw ToolError("one of --scenario, --ineq, --ineq-file is required");
    }
    if (has_ineq) {
        load_inequality(s, q);
        CStr ineq_json;
        check(exg_inequality_to_json(q.h, &ineq_json.p));
        json scenario_echo = json::parse(ineq_json.str()).at("scenario");
        if (!s.scenario.empty()) {
            ScenarioHandle sc;
            check(exg_scenario_parse(scenario_text(s.scenario).c_str(), &sc.h));
            CStr sc_json;
            check(exg_scenario_to_json(sc.h, &sc_json.p));
            if (json::parse(sc_json.str()) != scenario_echo) {
                throw ToolError("--scenario does not match the scenario the "
                                "inequality is defined on");
            }
        }
        check(exg_graph_support(q.h, &g.h));
        return scenario_echo;
    }
    ScenarioHandle sc;
    check(exg_scenario_parse(scenario_text(s.scenario).c_str(), &sc.h));
    check(exg_graph_from_scenario(sc.h, &g.h));
    CStr sc_json;
    check(exg_scenario_to_json(sc.h, &sc_json.p));
    return json::parse(sc_json.str());
}

struct Report {
    std::string command;
    json scenario;
    json seed;
    json results = json::object();
};

void emit_report(const std::string& path, const Report& r,
                 std::chrono::steady_clock::time_point start) {
    if (path.empty()) return;
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    json doc{{"schema", 1},
             {"tool", "exgraph"},
             {"version", exg_version()},
             {"command", r.command},
             {"seed", r.seed},
             {"scenario", r.scenario},
             {"results", r.results},
             {"wall_time_ms", wall_ms}};
    write_output(path, doc.dump(2) + "\n");
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

/* ---- graph ----------------------------------------------------------- */

struct GraphArgs {
    Source source;
    std::string dot_path;
    std::string graph_json_path;
    std::string json_path;
    bool colored = false;
    bool holes = false;
    bool antiholes = false;
    bool first_per_length = false;
    bool verdict = false;
    int max_len = 11;
    std::int64_t node_budget = 0;
};

int run_graph(const GraphArgs& a, std::chrono::steady_clock::time_point start) {
    GraphHandle g;
    IneqHandle q;
    Report report;
    report.command = "graph";
    report.scenario = resolve_graph(a.source, g, q);

    int vertices = 0;
    int64_t edges = 0;
    check(exg_graph_counts(g.h, &vertices, &edges));
    report.results["vertices"] = vertices;
    report.results["edges"] = edges;

    if (!a.dot_path.empty()) {
        CStr dot;
        check(exg_graph_to_dot(g.h, a.colored ? 1 : 0, &dot.p));
        write_output(a.dot_path, dot.str());
    }
    if (!a.graph_json_path.empty()) {
        CStr gj;
        check(exg_graph_to_json(g.h, a.colored ? 1 : 0, &gj.p));
        write_output(a.graph_json_path, gj.str() + "\n");
    }
    if (a.holes) {
        CStr rep;
        check(exg_find_holes(g.h, a.max_len, 0, a.first_per_length ? 1 : 0,
                             a.node_budget, &rep.p));
        report.results["holes"] = json::parse(rep.str());
    }
    if (a.antiholes) {
        CStr rep;
        check(exg_find_holes(g.h, a.max_len, 1, a.first_per_length ? 1 : 0,
                             a.node_budget, &rep.p));
        report.results["antiholes"] = json::parse(rep.str());
    }
    if (a.verdict) {
        CStr v;
        check(exg_perfect_verdict(g.h, a.max_len, &v.p));
        report.results["verdict"] = json::parse(v.str());
    }

    bool quiet = a.json_path == "-" || a.dot_path == "-" || a.graph_json_path == "-";
    if (!quiet) {
        std::cout << "vertices = " << vertices << "\n";
        std::cout << "edges = " << edges << "\n";
        for (const char* key : {"holes", "antiholes"}) {
            if (!report.results.contains(key)) continue;
            const json& rep = report.results[key];
            std::cout << key << ": exhaustive = "
                      << (rep.at("exhaustive").get<bool>() ? "yes" : "no");
            for (const auto& [len, count] : rep.at("counts").items()) {
                std::cout << ", C" << len << " x " << count.get<std::int64_t>();
            }
            std::cout << "\n";
        }
        if (report.results.contains("verdict")) {
            std::cout << "verdict = "
                      << report.results["verdict"].at("status").get<std::string>()
                      << "\n";
        }
    }
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- alpha ----------------------------------------------------------- */

struct AlphaArgs {
    Source source;
    std::string json_path;
    bool oracle = false;
};

int run_alpha(const AlphaArgs& a, std::chrono::steady_clock::time_point start) {
    GraphHandle g;
    IneqHandle q;
    Report report;
    report.command = "alpha";
    report.scenario = resolve_graph(a.source, g, q);

    double value = 0.0;
    uint64_t nodes = 0;
    CStr witness;
    check(exg_alpha(g.h, &value, &nodes, &witness.p));
    report.results["alpha"] = value;
    report.results["witness"] = json::parse(witness.str());
    report.results["nodes"] = nodes;

    if (a.oracle) {
        if (q.h == nullptr) {
            throw ToolError("--oracle needs an inequality (--ineq or --ineq-file)");
        }
        double oracle_value = 0.0;
        uint64_t strategies = 0;
        check(exg_classical_max(q.h, &oracle_value, &strategies));
        report.results["oracle"] = json{{"value", oracle_value},
                                        {"strategies_checked", strategies},
                                        {"agrees", oracle_value == value}};
    }

    if (a.json_path != "-") {
        std::cout << "alpha = " << fmt("%g", value) << "\n";
        if (a.oracle) {
            std::cout << "oracle = "
                      << fmt("%g", report.results["oracle"]["value"].get<double>())
                      << (report.results["oracle"]["agrees"].get<bool>()
                              ? " (agrees)"
                              : " (DISAGREES)")
                      << "\n";
        }
    }
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- theta ----------------------------------------------------------- */

struct ThetaArgs {
    Source source;
    std::string json_path;
    int cycle = 0;
    double tol = 0.0;
    int max_iter = 0;
};

int run_theta(const ThetaArgs& a, std::chrono::steady_clock::time_point start) {
    GraphHandle g;
    IneqHandle q;
    Report report;
    report.command = "theta";

    bool has_source = !a.source.scenario.empty() || !a.source.ineq_name.empty() ||
                      !a.source.ineq_file.empty();
    if (a.cycle != 0 && has_source) {
        throw ToolError("--cycle excludes --scenario/--ineq/--ineq-file");
    }
    if (a.cycle != 0) {
        check(exg_graph_cycle(a.cycle, &g.h));
    } else {
        report.scenario = resolve_graph(a.source, g, q);
    }

    exg_theta_report tr{};
    check(exg_theta(g.h, a.tol, a.max_iter, &tr));
    report.results["value"] = tr.value;
    report.results["iterations"] = tr.iterations;
    report.results["duality_gap"] = tr.duality_gap;
    report.results["primal_residual"] = tr.primal_residual;
    report.results["dual_residual"] = tr.dual_residual;

    if (a.cycle != 0) {
        double formula = 0.0;
        check(exg_theta_cycle_formula(a.cycle, &formula));
        report.results["formula"] = formula;
    }

    if (a.json_path != "-") {
        std::cout << "theta = " << fmt("%.7f", tr.value) << "\n";
        if (report.results.contains("formula")) {
            std::cout << "formula = "
                      << fmt("%.7f", report.results["formula"].get<double>()) << "\n";
        }
    }
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- seesaw ----------------------------------------------------------- */

struct SeesawArgs {
    Source source;
    std::string json_path;
    exg_seesaw_options opts{};
    uint64_t seed = 0;
    bool complex_field = false;
};

int run_seesaw(const SeesawArgs& a, std::chrono::steady_clock::time_point start) {
    IneqHandle q;
    load_inequality(a.source, q);

    Report report;
    report.command = "seesaw";
    report.seed = a.seed;
    CStr ineq_json;
    check(exg_inequality_to_json(q.h, &ineq_json.p));
    json ineq = json::parse(ineq_json.str());
    report.scenario = ineq.at("scenario");

    exg_seesaw_options opts = a.opts;
    opts.seed = a.seed;
    opts.complex_field = a.complex_field ? 1 : 0;

    double best = 0.0;
    CStr rep;
    check(exg_seesaw(q.h, &opts, &best, &rep.p));
    report.results = json::parse(rep.str());
    report.results["name"] = ineq.at("name");
    report.results["classical_bound"] = ineq.at("classical_bound");
    if (ineq.contains("ceiling")) {
        report.results["reference_ceiling"] = ineq.at("ceiling");
    }

    if (a.json_path != "-") {
        std::cout << "best_value = " << fmt("%.9f", best) << "\n";
        std::cout << "best_restart = " << report.results.at("best_restart").get<int>()
                  << "\n";
        std::cout << "classical_bound = "
                  << fmt("%g", ineq.at("classical_bound").get<double>()) << "\n";
        if (ineq.contains("ceiling")) {
            std::cout << "reference_ceiling = "
                      << fmt("%g", ineq.at("ceiling").get<double>()) << "\n";
        }
    }
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- scan ----------------------------------------------------------- */

struct ScanArgs {
    exg_scan_options opts{};
    std::string csv_path;
    std::string json_path;
    bool tie_n_to_m = false;
};

int run_scan(const ScanArgs& a, std::chrono::steady_clock::time_point start) {
    exg_scan_options opts = a.opts;
    opts.tie_n_to_m = a.tie_n_to_m ? 1 : 0;

    CStr csv;
    CStr js;
    check(exg_scan_family(&opts, &csv.p, &js.p));

    Report report;
    report.command = "scan";
    report.results = json::parse(js.str());

    if (!a.csv_path.empty()) write_output(a.csv_path, csv.str());
    bool quiet = a.csv_path == "-" || a.json_path == "-";
    if (!quiet) std::cout << csv.str();
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- catalog ----------------------------------------------------------- */

struct CatalogArgs {
    std::string name;
    std::string json_path;
};

int run_catalog(const CatalogArgs& a, std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "catalog";

    if (!a.name.empty()) {
        Source s;
        s.ineq_name = a.name;
        IneqHandle q;
        load_inequality(s, q);
        CStr js;
        check(exg_inequality_to_json(q.h, &js.p));
        report.results = json::parse(js.str());
        if (a.json_path != "-") std::cout << report.results.dump(2) << "\n";
        emit_report(a.json_path, report, start);
        return 0;
    }

    CStr names_json;
    check(exg_catalog_names(&names_json.p));
    json entries = json::array();
    for (const auto& name : json::parse(names_json.str())) {
        IneqHandle q;
        check(exg_catalog_get(name.get<std::string>().c_str(), &q.h));
        CStr js;
        check(exg_inequality_to_json(q.h, &js.p));
        json ineq = json::parse(js.str());
        json entry{{"name", ineq.at("name")},
                   {"classical_bound", ineq.at("classical_bound")},
                   {"terms", ineq.at("terms").size()}};
        if (ineq.contains("ceiling")) entry["reference_ceiling"] = ineq.at("ceiling");
        entries.push_back(std::move(entry));
    }
    report.results["entries"] = entries;

    if (a.json_path != "-") {
        for (const auto& e : entries) {
            std::cout << e.at("name").get<std::string>()
                      << "  bound=" << fmt("%g", e.at("classical_bound").get<double>())
                      << "  terms=" << e.at("terms").get<std::size_t>();
            if (e.contains("reference_ceiling")) {
                std::cout << "  ceiling="
                          << fmt("%g", e.at("reference_ceiling").get<double>());
            }
            std::cout << "\n";
        }
    }
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- table1 ----------------------------------------------------------- */

struct TableArgs {
    int max_d = 5;
    bool with_seesaw = false;
    int restarts = 50;
    uint64_t seed = 1;
    int threads = 1;
    std::string csv_path = "-";
    std::string json_path;
};

int run_table1(const TableArgs& a, std::chrono::steady_clock::time_point start) {
    CStr csv;
    check(exg_table1_csv(a.max_d, a.with_seesaw ? 1 : 0, a.restarts, a.seed,
                         a.threads, &csv.p));

    Report report;
    report.command = "table1";
    if (a.with_seesaw) report.seed = a.seed;
    report.results["csv"] = csv.str();

    write_output(a.csv_path, csv.str());
    emit_report(a.json_path, report, start);
    return 0;
}

/* ---- iv-estimate -------------------------------------------------------- */

struct IvArgs {
    std::string input;
    double gamma = 0.0;
    bool has_gamma = false;
    std::size_t samples = 100000;
    uint64_t seed = 0;
    std::string json_path;
};

void parse_sample_file(const std::string& path, std::vector<double>& x,
                       std::vector<double>& a, std::vector<double>& b) {
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line) {
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        }
        std::istringstream row(line);
        double vx = 0.0;
        double va = 0.0;
        double vb = 0.0;
        if (row >> vx >> va >> vb) {
            x.push_back(vx);
            a.push_back(va);
            b.push_back(vb);
        }
        /* non-numeric rows (e.g. a header) are skipped */
    }
    if (x.empty()) throw ToolError("no samples found in " + path);
}

int run_iv(const IvArgs& a, std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "iv-estimate";

    double estimate = 0.0;
    if (!a.input.empty()) {
        if (a.has_gamma) throw ToolError("--input and --gamma are mutually exclusive");
        std::vector<double> x;
        std::vector<double> va;
        std::vector<double> vb;
        parse_sample_file(a.input, x, va, vb);
        check(exg_iv_estimate(x.data(), va.data(), vb.data(), x.size(), &estimate));
        report.results["samples"] = x.size();
    } else {
        if (!a.has_gamma) throw ToolError("one of --input, --gamma is required");
        check(exg_iv_synthetic(a.gamma, a.samples, a.seed, &estimate));
        report.seed = a.seed;
        report.results["samples"] = a.samples;
        report.results["true_gamma"] = a.gamma;
    }
    report.results["gamma_estimate"] = estimate;

    if (a.json_path != "-") {
        std::cout << "gamma_estimate = " << fmt("%.6f", estimate) << "\n";
    }
    emit_report(a.json_path, report, start);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    auto start = std::chrono::steady_clock::now();

    CLI::App app{"Exclusivity-graph toolkit for single-latent causal models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", exg_version());

    GraphArgs graph_args;
    auto* cmd_graph = app.add_subcommand(
        "graph", "Build an exclusivity graph and run structural diagnostics");
    add_source_options(cmd_graph, graph_args.source, true);
    cmd_graph->add_option("--dot", graph_args.dot_path, "Write DOT to file ('-' = stdout)");
    cmd_graph->add_option("--graph-json", graph_args.graph_json_path,
                          "Write the graph structure as JSON");
    cmd_graph->add_flag("--colored", graph_args.colored,
                        "Color edges by witnessing variable in DOT/JSON output");
    cmd_graph->add_flag("--holes", graph_args.holes, "Search for induced odd holes");
    cmd_graph->add_flag("--antiholes", graph_args.antiholes,
                        "Search for induced odd antiholes");
    cmd_graph->add_flag("--first-per-length", graph_args.first_per_length,
                        "Stop recording a hole length once witnessed");
    cmd_graph->add_option("--max-len", graph_args.max_len,
                          "Largest hole length searched")->capture_default_str();
    cmd_graph->add_option("--node-budget", graph_args.node_budget,
                          "Search node budget (0 = default)");
    cmd_graph->add_flag("--verdict", graph_args.verdict,
                        "Report the perfect-graph verdict");
    cmd_graph->add_option("--json", graph_args.json_path,
                          "Write the JSON report ('-' = stdout)");

    AlphaArgs alpha_args;
    auto* cmd_alpha = app.add_subcommand(
        "alpha", "Exact maximum-weight stable set (classical bound)");
    add_source_options(cmd_alpha, alpha_args.source, true);
    cmd_alpha->add_flag("--oracle", alpha_args.oracle,
                        "Cross-check against exhaustive deterministic strategies");
    cmd_alpha->add_option("--json", alpha_args.json_path,
                          "Write the JSON report ('-' = stdout)");

    ThetaArgs theta_args;
    auto* cmd_theta =
        app.add_subcommand("theta", "Lovasz theta bound (semidefinite programming)");
    add_source_options(cmd_theta, theta_args.source, true);
    cmd_theta->add_option("--cycle", theta_args.cycle, "Odd cycle C_n instead of a scenario");
    cmd_theta->add_option("--tol", theta_args.tol, "Solver tolerance (0 = default 1e-9)");
    cmd_theta->add_option("--max-iter", theta_args.max_iter,
                          "Solver iteration cap (0 = default 200)");
    cmd_theta->add_option("--json", theta_args.json_path,
                          "Write the JSON report ('-' = stdout)");

    SeesawArgs seesaw_args;
    exg_seesaw_options_init(&seesaw_args.opts);
    auto* cmd_seesaw = app.add_subcommand(
        "seesaw", "Variational quantum lower bound for an inequality");
    add_source_options(cmd_seesaw, seesaw_args.source, false);
    cmd_seesaw->add_option("--seed", seesaw_args.seed, "Master seed (required)")
        ->required();
    cmd_seesaw->add_option("--restarts", seesaw_args.opts.restarts,
                           "Restart count; restart 0 is deterministic")->capture_default_str();
    cmd_seesaw->add_option("--dim-a", seesaw_args.opts.dim_a, "Local dimension, first side")
        ->capture_default_str();
    cmd_seesaw->add_option("--dim-b", seesaw_args.opts.dim_b,
                           "Local dimension, second side")->capture_default_str();
    cmd_seesaw->add_flag("--complex", seesaw_args.complex_field,
                         "Optimize over complex operators");
    cmd_seesaw->add_option("--sweep-cap", seesaw_args.opts.sweep_cap,
                           "Max sweeps per restart")->capture_default_str();
    cmd_seesaw->add_option("--threads", seesaw_args.opts.threads,
                           "Worker threads (results match --threads 1)")->capture_default_str();
    cmd_seesaw->add_option("--json", seesaw_args.json_path,
                           "Write the JSON report ('-' = stdout)");

    ScanArgs scan_args;
    exg_scan_options_init(&scan_args.opts);
    auto* cmd_scan = app.add_subcommand(
        "scan", "First odd-hole appearances over the instrumental family");
    cmd_scan->add_option("--l-min", scan_args.opts.l_min, "Smallest instrument cardinality")
        ->capture_default_str();
    cmd_scan->add_option("--l-max", scan_args.opts.l_max, "Largest instrument cardinality")
        ->capture_default_str();
    cmd_scan->add_option("--m-min", scan_args.opts.m_min, "Smallest first-outcome cardinality")
        ->capture_default_str();
    cmd_scan->add_option("--m-max", scan_args.opts.m_max, "Largest first-outcome cardinality")
        ->capture_default_str();
    cmd_scan->add_option("--n-min", scan_args.opts.n_min, "Smallest second-outcome cardinality")
        ->capture_default_str();
    cmd_scan->add_option("--n-max", scan_args.opts.n_max, "Largest second-outcome cardinality")
        ->capture_default_str();
    cmd_scan->add_flag("--tie-n-to-m", scan_args.tie_n_to_m, "Scan n = m only");
    cmd_scan->add_option("--max-len", scan_args.opts.max_len,
                         "Largest hole length wanted")->capture_default_str();
    cmd_scan->add_option("--node-budget", scan_args.opts.node_budget,
                         "Search node budget (0 = default)");
    cmd_scan->add_option("--csv", scan_args.csv_path, "Write CSV ('-' = stdout)");
    cmd_scan->add_option("--json", scan_args.json_path,
                         "Write the JSON report ('-' = stdout)");

    CatalogArgs catalog_args;
    auto* cmd_catalog =
        app.add_subcommand("catalog", "List or print the built-in inequalities");
    cmd_catalog->add_option("--name", catalog_args.name,
                            "Print one inequality as JSON");
    cmd_catalog->add_option("--json", catalog_args.json_path,
                            "Write the JSON report ('-' = stdout)");

    TableArgs table_args;
    auto* cmd_table = app.add_subcommand(
        "table1", "CGLMP S^d_k summary grid: alpha, theta, optional see-saw");
    cmd_table->add_option("--max-d", table_args.max_d, "Largest d (3..5)")
        ->capture_default_str();
    cmd_table->add_flag("--seesaw", table_args.with_seesaw, "Append a see-saw column");
    cmd_table->add_option("--restarts", table_args.restarts, "See-saw restarts")
        ->capture_default_str();
    cmd_table->add_option("--seed", table_args.seed, "See-saw master seed")
        ->capture_default_str();
    cmd_table->add_option("--threads", table_args.threads, "See-saw worker threads")
        ->capture_default_str();
    cmd_table->add_option("--csv", table_args.csv_path, "CSV target ('-' = stdout)")
        ->capture_default_str();
    cmd_table->add_option("--json", table_args.json_path,
                          "Write the JSON report ('-' = stdout)");

    IvArgs iv_args;
    auto* cmd_iv = app.add_subcommand(
        "iv-estimate", "Instrumental-variable causal strength (covariance ratio)");
    cmd_iv->add_option("--input", iv_args.input, "Sample file: rows of x,a,b");
    auto* gamma_opt =
        cmd_iv->add_option("--gamma", iv_args.gamma, "Synthetic model: true effect");
    cmd_iv->add_option("--samples", iv_args.samples, "Synthetic sample count")
        ->capture_default_str();
    cmd_iv->add_option("--seed", iv_args.seed, "Synthetic model seed")
        ->capture_default_str();
    cmd_iv->add_option("--json", iv_args.json_path,
                       "Write the JSON report ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    iv_args.has_gamma = gamma_opt->count() > 0;

    try {
        if (cmd_graph->parsed()) return run_graph(graph_args, start);
        if (cmd_alpha->parsed()) return run_alpha(alpha_args, start);
        if (cmd_theta->parsed()) return run_theta(theta_args, start);
        if (cmd_seesaw->parsed()) return run_seesaw(seesaw_args, start);
        if (cmd_scan->parsed()) return run_scan(scan_args, start);
        if (cmd_catalog->parsed()) return run_catalog(catalog_args, start);
        if (cmd_table->parsed()) return run_table1(table_args, start);
        if (cmd_iv->parsed()) return run_iv(iv_args, start);
    } catch (const ToolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
