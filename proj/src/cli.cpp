#include "ccd/cli.hpp"

#include "ccd/ci_test.hpp"
#include "ccd/cluster.hpp"
#include "ccd/discovery.hpp"
#include "ccd/evaluation.hpp"
#include "ccd/graph.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace ccd::cli {

std::string normalize_key(const std::string& key) {
    std::string out;
    bool pending = false;
    for (unsigned char c : key) {
        if (c == ' ' || c == '-' || c == '.' || c == '_' || c == '\t') {
            pending = !out.empty();
            continue;
        }
        if (pending) out += '_';
        pending = false;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_config(std::istream& in) {
    std::map<std::string, std::string> cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) eq = line.find(':');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = normalize_key(line.substr(0, eq));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        cfg[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return read_config(in);
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& value) {
    std::string v = value;
    for (char& c : v)
        if (c == '[' || c == ']' || c == '(' || c == ')' || c == ';') c = ',';
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string& s, const std::string& key) {
    std::istringstream in(s);
    T v;
    if (!(in >> v) || !(in >> std::ws).eof()) throw UsageError("bad value for " + key + ": '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s, const std::string& key) {
    std::string v = normalize_key(s);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw UsageError("bad boolean for " + key + ": '" + s + "'");
}

template <class T>
std::vector<T> parse_numbers(const std::string& s, const std::string& key) {
    std::vector<T> out;
    for (const auto& item : split_list(s)) out.push_back(parse_number<T>(item, key));
    if (out.empty()) throw UsageError("empty list for " + key);
    return out;
}

const std::string* lookup(const std::map<std::string, std::string>& cfg, std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        auto it = cfg.find(k);
        if (it != cfg.end()) return &it->second;
    }
    return nullptr;
}

std::string default_output(const std::string& file_name) {
    if (const char* dir = std::getenv("CCD_OUTPUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / file_name).string();
    return "";
}

void apply_study_config(StudySpec& s, const std::map<std::string, std::string>& cfg, std::vector<std::string>& notes) {
    if (auto v = lookup(cfg, {"number_of_nodes", "n_nodes", "nodes"})) s.n_nodes = parse_number<int>(*v, "nodes");
    if (auto v = lookup(cfg, {"number_of_edges", "n_edges", "edges"})) s.edges = parse_numbers<int>(*v, "edges");
    if (auto v = lookup(cfg, {"number_of_clusters", "n_clusters", "clusters"}))
        s.clusters = parse_numbers<int>(*v, "clusters");
    if (auto v = lookup(cfg, {"alpha_for_ci_test", "alpha", "alphas"})) s.alphas = parse_numbers<double>(*v, "alpha");
    if (auto v = lookup(cfg, {"runs_per_configuration", "runs"})) s.runs = parse_number<int>(*v, "runs");
    if (auto v = lookup(cfg, {"sample_size", "n_samples", "samples"}))
        s.n_samples = parse_numbers<int>(*v, "sample size").front();
    if (auto v = lookup(cfg, {"dag_generation_method", "graph_method"})) {
        s.graph_methods.clear();
        for (const auto& m : split_list(*v)) s.graph_methods.push_back(parse_graph_method(m));
    }
    if (auto v = lookup(cfg, {"distribution", "noise"})) {
        s.noises.clear();
        for (const auto& m : split_list(*v)) s.noises.push_back(parse_noise(m));
    }
    if (auto v = lookup(cfg, {"weight_range"})) {
        auto w = parse_numbers<double>(*v, "weight range");
        if (w.size() != 2) throw UsageError("weight range needs two numbers");
        s.weight_low = w[0];
        s.weight_high = w[1];
    }
    if (auto v = lookup(cfg, {"cluster_method"})) s.cluster_method = parse_cluster_method(*v);
    if (auto v = lookup(cfg, {"latents", "latent_variables"})) s.latents = parse_bool(*v, "latents");
    if (auto v = lookup(cfg, {"oracle"})) s.oracle = parse_bool(*v, "oracle");
    if (auto v = lookup(cfg, {"algorithms", "algorithm"})) {
        s.algorithms.clear();
        for (const auto& a : split_list(*v)) {
            std::string k = normalize_key(a);
            if (k == "fcitiers") {
                notes.push_back("FCITiers is not implemented; skipped");
                continue;
            }
            s.algorithms.push_back(parse_algorithm(k == "c_pc" ? "cpc" : k == "c_fci" ? "cfci" : k));
        }
        if (s.algorithms.empty()) throw UsageError("no runnable algorithm configured");
    }
    for (Algorithm a : s.algorithms)
        if (family_of(a) == Family::Fci && !s.latents)
            throw UsageError("FCI-family algorithms need 'latents = true' for a reference MAG");
}

int cmd_discover(const std::map<std::string, std::string>& cfg, std::ostream& out, std::ostream& err) {
    auto get = [&](std::initializer_list<const char*> keys) { return lookup(cfg, keys); };
    const std::string* algo_s = get({"algorithm", "algo"});
    if (!algo_s) throw UsageError("--algo is required");
    Algorithm algo = parse_algorithm(normalize_key(*algo_s) == "c_pc" ? "cpc" : *algo_s);
    bool pag = true;
    if (auto v = get({"pag_mode"})) pag = parse_bool(*v, "pag_mode");
    if (algo == Algorithm::ClusterFci && !pag) algo = Algorithm::ClusterFciNonPag;
    double alpha = 0.05;
    if (auto v = get({"alpha", "alpha_for_ci_test"})) alpha = parse_number<double>(*v, "alpha");
    if (!(alpha > 0 && alpha < 1)) throw UsageError("alpha must lie in (0, 1)");
    const std::string* data_path = get({"data"});
    if (!data_path) throw UsageError("--data is required");
    const std::string* cluster_path = get({"clusters"});
    bool needs_clusters = algo == Algorithm::ClusterPc || algo == Algorithm::ClusterFci ||
                          algo == Algorithm::ClusterFciNonPag;
    if (needs_clusters && !cluster_path) throw UsageError("--clusters is required for --algo " + *algo_s);

    Dataset data = read_csv_file(*data_path);
    std::optional<ClusterGraph> gc;
    if (needs_clusters) {
        try {
            gc = read_cluster_file(*cluster_path, &data.labels);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("cluster file does not match the data: ") + e.what());
        }
    }
    FisherZTester tester(data, alpha);
    DiscoveryOutput result;
    switch (algo) {
        case Algorithm::Pc: result = pc(tester, data.labels); break;
        case Algorithm::ClusterPc: result = cluster_pc(tester, *gc); break;
        case Algorithm::Fci: result = fci(tester, data.labels); break;
        case Algorithm::ClusterFci: result = cluster_fci(tester, *gc, true); break;
        case Algorithm::ClusterFciNonPag: result = cluster_fci(tester, *gc, false); break;
    }

    std::ostringstream text;
    text << "# algorithm: " << result.algorithm << '\n';
    text << "# alpha: " << alpha << '\n';
    text << "# ci_total: " << result.ci_stats.total_invocations << '\n';
    text << "# ci_unique: " << result.ci_stats.unique_queries << '\n';
    if (family_of(algo) == Family::Fci) text << "# pag_mode: " << (result.pag_mode ? "true" : "false") << '\n';
    write_edge_list(text, result.graph);

    std::string path;
    if (auto v = get({"output"})) path = *v;
    else path = default_output("discover_" + result.algorithm + ".graph");
    if (path.empty() || path == "-") {
        out << text.str();
    } else {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write output file: " + path);
        f << text.str();
        out << "wrote " << path << '\n';
    }
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    for (const auto& v : result.bk_violations) err << "warning: background knowledge violated: " << v << '\n';
    return result.bk_violations.empty() ? kOk : kBkWarning;
}

int cmd_simulate(const std::map<std::string, std::string>& cfg, std::ostream& out, std::ostream& err) {
    const std::string* study_s = lookup(cfg, {"study"});
    if (!study_s) throw UsageError("--study is required");
    std::string study = normalize_key(*study_s);
    StudySpec spec;
    if (study == "custom") spec.name = "custom";
    else {
        try {
            spec = study_preset(study);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::vector<std::string> notes;
    if (study == "sim3" || study == "sim4") notes.push_back("FCITiers column omitted");
    apply_study_config(spec, cfg, notes);
    if (auto v = lookup(cfg, {"f1"})) {
        std::string k = normalize_key(*v);
        if (k == "halved") spec.f1 = F1Formula::Halved;
        else if (k == "conventional") spec.f1 = F1Formula::Conventional;
        else throw UsageError("--f1 must be 'conventional' or 'halved'");
    }
    if (auto v = lookup(cfg, {"reference"})) {
        std::string k = normalize_key(*v);
        if (k == "cpdag") spec.pc_reference = PcReference::Cpdag;
        else if (k == "mpdag") spec.pc_reference = PcReference::Mpdag;
        else if (k == "dag") spec.pc_reference = PcReference::Dag;
        else throw UsageError("--reference must be cpdag, mpdag or dag");
    }
    if (auto v = lookup(cfg, {"timing"})) spec.timing = parse_bool(*v, "timing");
    double scale = 1.0;
    if (auto v = lookup(cfg, {"scale"})) scale = parse_number<double>(*v, "scale");
    if (!(scale > 0 && scale <= 1)) throw UsageError("--scale must lie in (0, 1]");
    std::uint64_t seed = 0;
    if (auto v = lookup(cfg, {"seed"})) seed = parse_number<std::uint64_t>(*v, "seed");
    int jobs = 1;
    if (auto v = lookup(cfg, {"jobs"})) jobs = parse_number<int>(*v, "jobs");
    if (jobs < 1) throw UsageError("--jobs must be positive");

    std::string path;
    if (auto v = lookup(cfg, {"output"})) path = *v;
    else path = default_output(spec.name + "_results.csv");
    if (path.empty()) path = spec.name + "_results.csv";

    ExperimentReport report = run_study(spec, scale, seed, jobs);
    report.notes.insert(report.notes.begin(), notes.begin(), notes.end());
    {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write results file: " + path);
        write_results_csv(f, report);
    }
    for (const auto& n : report.notes) err << "note: " << n << '\n';
    for (const auto& s : report.skipped) err << "skipped: " << s << '\n';
    write_summary(out, report);
    out << "wrote " << path << '\n';
    return kOk;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_check(const std::map<std::string, std::string>& cfg, bool emit_bk, std::ostream& out) {
    const std::string* graph_path = lookup(cfg, {"graph"});
    const std::string* cluster_path = lookup(cfg, {"clusters"});
    if (!graph_path || !cluster_path) throw UsageError("--graph and --clusters are required");
    MixedGraph g = read_edge_list_file(*graph_path);
    ClusterGraph gc = read_cluster_file(*cluster_path, &g.labels());

    auto report = check_compatibility(g, gc);
    if (report.compatible) {
        out << "COMPATIBLE\n";
    } else {
        out << "INCOMPATIBLE: " << report.violations.front() << '\n';
        for (std::size_t i = 1; i < report.violations.size(); ++i) out << "  " << report.violations[i] << '\n';
    }

    auto bk = pairwise_constraints(gc, gc.has_bidirected() || g.has_bidirected());
    if (emit_bk) {
        out << "bk clauses (" << bk.clauses.size() << "):\n";
        for (const auto& c : bk.clauses) out << "  " << describe_clause(c, gc.partition(), g.labels()) << '\n';
    }
    if (g.has_circles()) {
        out << "pairwise constraints: not evaluated (graph has circle marks)\n";
    } else {
        auto failing = failing_clauses(bk, g);
        out << "pairwise constraints: " << bk.clauses.size() << " clauses, ";
        if (failing.empty()) out << "all hold\n";
        else {
            out << failing.size() << " fail\n";
            for (const auto& c : failing) out << "  fails: " << describe_clause(c, gc.partition(), g.labels()) << '\n';
        }
    }

    if (!g.has_circles()) {
        auto kind = classify(g);
        out << "graph kind: dag=" << yes_no(kind.is_dag) << " admg=" << yes_no(kind.is_admg)
            << " ancestral=" << yes_no(kind.is_ancestral);
        if (kind.is_maximal) out << " maximal=" << yes_no(*kind.is_maximal);
        out << '\n';
        if (kind.is_admg && kind.is_ancestral && kind.is_maximal.value_or(false))
            out << "tiered background knowledge: "
                << (satisfies_tiered_bk(g, tiers_from_cluster_graph(gc)) ? "satisfied" : "violated") << '\n';
    } else {
        out << "graph kind: partial mixed graph (circle marks)\n";
    }
    return report.compatible ? kOk : kIncompatible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal discovery with cluster graph background knowledge"};
    app.require_subcommand(1);
    std::string config_path;

    auto* discover = app.add_subcommand("discover", "Run PC, cluster PC, FCI or cluster FCI on a CSV dataset");
    std::string algo, data, clusters, output;
    double alpha = 0.05;
    bool no_pag = false;
    discover->add_option("--algo", algo, "pc, cpc, fci or cfci");
    discover->add_option("--data", data, "Headered CSV, one column per variable");
    discover->add_option("--clusters", clusters, "Cluster graph file (needed for cpc and cfci)");
    discover->add_option("--alpha", alpha, "Significance level of the Fisher-z test");
    discover->add_flag("--no-pag", no_pag, "Keep almost directed cycles (cluster FCI only)");
    discover->add_option("-o,--output", output, "Output graph file ('-' for standard output)");
    discover->add_option("--config", config_path, "Key-value configuration file");

    auto* simulate = app.add_subcommand("simulate", "Run a simulation study and write a results CSV");
    std::string study, f1, reference;
    double scale = 1.0;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool timing = false, oracle = false;
    simulate->add_option("--study", study, "sim1, sim2, sim3, sim4 or custom");
    simulate->add_option("--scale", scale, "Fraction of the replications to run, in (0, 1]");
    simulate->add_option("--seed", seed, "Base seed");
    simulate->add_option("--jobs", jobs, "Worker threads");
    simulate->add_option("--f1", f1, "conventional (default) or halved");
    simulate->add_option("--reference", reference, "PC-family reference: cpdag (default), mpdag or dag");
    simulate->add_flag("--timing", timing, "Record wall-clock runtime per run");
    simulate->add_flag("--oracle", oracle, "Use the m-separation oracle instead of Fisher-z");
    simulate->add_option("-o,--output", output, "Results CSV path");
    simulate->add_option("--config", config_path, "Key-value configuration file");

    auto* check = app.add_subcommand("check", "Check a graph against a cluster graph");
    std::string graph;
    bool emit_bk = false;
    check->add_option("--graph", graph, "Edge-list graph file");
    check->add_option("--clusters", clusters, "Cluster graph file");
    check->add_flag("--emit-bk", emit_bk, "Print the pairwise clause list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kError;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        std::map<std::string, std::string> cfg;
        if (!config_path.empty()) cfg = read_config_file(config_path);
        auto set = [&](const char* opt, const char* key, const std::string& value) {
            if (sub->count(opt) > 0) cfg[key] = value;
        };
        auto num = [](auto v) {
            std::ostringstream s;
            s << std::setprecision(17) << v;
            return s.str();
        };
        if (sub == discover) {
            set("--algo", "algorithm", algo);
            set("--data", "data", data);
            set("--clusters", "clusters", clusters);
            set("--alpha", "alpha", num(alpha));
            set("--output", "output", output);
            if (no_pag) cfg["pag_mode"] = "false";
            return cmd_discover(cfg, out, err);
        }
        if (sub == simulate) {
            set("--study", "study", study);
            set("--scale", "scale", num(scale));
            set("--seed", "seed", num(seed));
            set("--jobs", "jobs", num(jobs));
            set("--f1", "f1", f1);
            set("--reference", "reference", reference);
            set("--output", "output", output);
            if (timing) cfg["timing"] = "true";
            if (oracle) cfg["oracle"] = "true";
            return cmd_simulate(cfg, out, err);
        }
        set("--graph", "graph", graph);
        set("--clusters", "clusters", clusters);
        return cmd_check(cfg, emit_bk, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << sub->help();
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
}

}  // namespace ccd::cli
