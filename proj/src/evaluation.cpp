#include "ccd/evaluation.hpp"

#include "ccd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ccd {

namespace {

void check_same_nodes(const MixedGraph& a, const MixedGraph& b) {
    if (a.size() != b.size())
        throw GraphError("graphs have different node counts (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
}

}  // namespace

ConfusionCounts confusion(const MixedGraph& est, const MixedGraph& ref, CompareMode mode) {
    check_same_nodes(est, ref);
    ConfusionCounts c;
    c.mode = mode;
    int n = est.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            bool e = est.adjacent(x, y), r = ref.adjacent(x, y);
            if (mode == CompareMode::Adjacency) {
                if (e && r) ++c.tp;
                else if (e) ++c.fp;
                else if (r) ++c.fn;
                else ++c.tn;
                continue;
            }
            if (!e && !r) continue;
            for (auto [at, other] : {std::pair{x, y}, std::pair{y, x}}) {
                bool ea = e && est.mark_at(at, other) == Mark::Arrow;
                bool ra = r && ref.mark_at(at, other) == Mark::Arrow;
                if (ea && ra) ++c.tp;
                else if (ea) ++c.fp;
                else if (ra) ++c.fn;
                else ++c.tn;
            }
        }
    return c;
}

PrecisionRecall precision_recall_f1(const ConfusionCounts& c, F1Formula f) {
    PrecisionRecall out;
    if (c.tp + c.fp > 0) out.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0) out.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    double sum = out.precision + out.recall;
    if (sum > 0) {
        out.f1 = out.precision * out.recall / sum;
        if (f == F1Formula::Conventional) out.f1 *= 2.0;
    }
    return out;
}

int shd(const MixedGraph& g1, const MixedGraph& g2) {
    check_same_nodes(g1, g2);
    int d = 0;
    int n = g1.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            bool a = g1.adjacent(x, y), b = g2.adjacent(x, y);
            if (a != b) ++d;
            else if (a && (g1.mark_at(x, y) != g2.mark_at(x, y) || g1.mark_at(y, x) != g2.mark_at(y, x))) ++d;
        }
    return d;
}

MixedGraph cpdag(const MixedGraph& dag) {
    if (!dag.all_directed() || has_directed_cycle(dag)) throw GraphError("cpdag needs a DAG");
    MixedGraph g(dag.labels());
    for (auto [a, b] : dag.edges()) g.add_undirected(a, b);
    int n = dag.size();
    for (int j = 0; j < n; ++j) {
        auto pa = dag.parents(j);
        for (std::size_t a = 0; a < pa.size(); ++a)
            for (std::size_t b = a + 1; b < pa.size(); ++b)
                if (!dag.adjacent(pa[a], pa[b])) {
                    g.add_directed(pa[a], j);
                    g.add_directed(pa[b], j);
                }
    }
    return meek_closure(std::move(g));
}

MixedGraph impose_cluster_orientations(const MixedGraph& g, const ClusterGraph& gc) {
    MixedGraph bk = cdag_to_mpdag(gc);
    MixedGraph out = g;
    for (auto [a, b] : g.edges()) {
        if (bk.is_directed(a, b)) out.add_directed(a, b);
        else if (bk.is_directed(b, a)) out.add_directed(b, a);
    }
    return meek_closure(std::move(out));
}

MixedGraph reference_graph(const GroundTruth& truth, Family family, PcReference pc_ref) {
    if (family == Family::Fci) {
        if (!truth.observed_mag) throw std::invalid_argument("FCI reference needs a ground truth with a MAG");
        OracleTester oracle(*truth.observed_mag);
        return fci(oracle, truth.observed_mag->labels()).graph;
    }
    MixedGraph dag = truth.observed_dag();
    switch (pc_ref) {
        case PcReference::Cpdag: return cpdag(dag);
        case PcReference::Mpdag: return impose_cluster_orientations(cpdag(dag), truth.cluster_graph);
        case PcReference::Dag: return dag;
    }
    throw std::logic_error("unhandled reference kind");
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Pc: return "pc";
        case Algorithm::ClusterPc: return "cpc";
        case Algorithm::Fci: return "fci";
        case Algorithm::ClusterFci: return "cfci";
        case Algorithm::ClusterFciNonPag: return "cfci-nonpag";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "pc") return Algorithm::Pc;
    if (s == "cpc" || s == "cluster-pc" || s == "c-pc") return Algorithm::ClusterPc;
    if (s == "fci") return Algorithm::Fci;
    if (s == "cfci" || s == "cluster-fci" || s == "c-fci") return Algorithm::ClusterFci;
    if (s == "cfci-nonpag" || s == "nonpag") return Algorithm::ClusterFciNonPag;
    throw std::invalid_argument("unknown algorithm: " + s);
}

Family family_of(Algorithm a) { return a == Algorithm::Pc || a == Algorithm::ClusterPc ? Family::Pc : Family::Fci; }

StudySpec study_preset(const std::string& name) {
    StudySpec s;
    s.name = name;
    const std::vector<double> alphas{0.01, 0.05, 0.1, 0.25, 0.5};
    if (name == "sim1") {
        s.n_nodes = 15;
        s.edges = {15, 30, 50, 80, 150};
        s.clusters = {1, 2, 3, 4, 5, 6, 7};
        s.alphas = alphas;
        s.runs = 10;
    } else if (name == "sim2") {
        s.n_nodes = 15;
        s.edges = {15, 30, 50, 80};
        s.clusters = {1, 2, 3, 4, 5, 6};
        s.alphas = alphas;
        s.graph_methods = {GraphMethod::ErdosRenyi, GraphMethod::Hierarchical, GraphMethod::ScaleFree};
        s.noises = {Noise::Exponential, Noise::Gaussian, Noise::Gumbel};
        s.runs = 1;
    } else if (name == "sim3") {
        s.n_nodes = 18;
        s.edges = {18, 24, 30};
        s.clusters = {2, 3, 4, 5, 6, 7};
        s.runs = 10;
        s.latents = true;
        s.algorithms = {Algorithm::Fci, Algorithm::ClusterFci, Algorithm::ClusterFciNonPag};
    } else if (name == "sim4") {
        s.n_nodes = 15;
        s.edges = {15, 20, 25};
        s.clusters = {3, 4, 5};
        s.runs = 5;
        s.latents = true;
        s.cluster_method = ClusterMethod::CdagFirst;
        s.algorithms = {Algorithm::Fci, Algorithm::ClusterFci, Algorithm::ClusterFciNonPag};
    } else {
        throw std::invalid_argument("unknown study: " + name + " (expected sim1, sim2, sim3 or sim4)");
    }
    return s;
}

int scaled_runs(int runs, double scale) {
    if (!(scale > 0 && scale <= 1)) throw std::invalid_argument("scale must lie in (0, 1]");
    return std::max(1, static_cast<int>(std::lround(runs * scale)));
}

namespace {

struct Cell {
    int config_id;
    GraphMethod method;
    Noise noise;
    int edges;
    int clusters;
    double alpha;
};

struct Instance {
    const Cell* cell;
    std::uint64_t seed;
};

DiscoveryOutput run_algorithm(Algorithm a, CiTester& t, const GroundTruth& gt) {
    const auto& labels = gt.dataset.labels;
    switch (a) {
        case Algorithm::Pc: return pc(t, labels);
        case Algorithm::ClusterPc: return cluster_pc(t, gt.cluster_graph);
        case Algorithm::Fci: return fci(t, labels);
        case Algorithm::ClusterFci: return cluster_fci(t, gt.cluster_graph, true);
        case Algorithm::ClusterFciNonPag: return cluster_fci(t, gt.cluster_graph, false);
    }
    throw std::logic_error("unhandled algorithm");
}

std::vector<ResultRow> run_instance(const StudySpec& spec, const Cell& cell, std::uint64_t seed) {
    GenConfig cfg;
    cfg.n_nodes = spec.n_nodes;
    cfg.n_edges = cell.edges;
    cfg.n_clusters = cell.clusters;
    cfg.graph_method = cell.method;
    cfg.cluster_method = spec.cluster_method;
    cfg.noise = cell.noise;
    cfg.weight_low = spec.weight_low;
    cfg.weight_high = spec.weight_high;
    cfg.n_samples = spec.n_samples;
    cfg.seed = seed;
    GroundTruth gt = gen_ground_truth(cfg, spec.latents);

    std::unique_ptr<CiTester> tester;
    if (spec.oracle) {
        tester = std::make_unique<OracleTester>(gt.observed_mag ? *gt.observed_mag : gt.dag);
    } else {
        tester = std::make_unique<FisherZTester>(correlation_matrix_serial(gt.dataset.samples),
                                                 gt.dataset.num_samples(), cell.alpha);
    }

    std::map<Family, MixedGraph> refs;
    F1Formula alt = spec.f1 == F1Formula::Conventional ? F1Formula::Halved : F1Formula::Conventional;
    std::vector<ResultRow> rows;
    for (Algorithm a : spec.algorithms) {
        Family fam = family_of(a);
        if (!refs.count(fam)) refs.emplace(fam, reference_graph(gt, fam, spec.pc_reference));
        const MixedGraph& ref = refs.at(fam);

        auto start = std::chrono::steady_clock::now();
        DiscoveryOutput out = run_algorithm(a, *tester, gt);
        auto stop = std::chrono::steady_clock::now();

        ResultRow r;
        r.study = spec.name;
        r.config_id = cell.config_id;
        r.seed = seed;
        r.algorithm = to_string(a);
        r.n_nodes = spec.n_nodes;
        r.n_edges = cell.edges;
        r.n_clusters = cell.clusters;
        r.alpha = cell.alpha;
        r.distribution = to_string(cell.noise);
        r.graph_method = to_string(cell.method);
        auto adj = confusion(out.graph, ref, CompareMode::Adjacency);
        auto arr = confusion(out.graph, ref, CompareMode::Arrow);
        r.adj = precision_recall_f1(adj, spec.f1);
        r.arrow = precision_recall_f1(arr, spec.f1);
        r.adj_f1_alt = precision_recall_f1(adj, alt).f1;
        r.arrow_f1_alt = precision_recall_f1(arr, alt).f1;
        r.shd = shd(out.graph, ref);
        r.ci_total = out.ci_stats.total_invocations;
        r.ci_unique = out.ci_stats.unique_queries;
        if (spec.timing) r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        r.bk_violations = static_cast<int>(out.bk_violations.size());
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

ExperimentReport run_study(const StudySpec& spec, double scale, std::uint64_t seed, int jobs) {
    ExperimentReport report;
    report.spec = spec;
    int runs = scaled_runs(spec.runs, scale);
    int max_edges = spec.n_nodes * (spec.n_nodes - 1) / 2;

    std::vector<Cell> cells;
    for (GraphMethod gm : spec.graph_methods)
        for (Noise nz : spec.noises)
            for (int e : spec.edges)
                for (int c : spec.clusters)
                    for (double a : spec.alphas) {
                        int id = static_cast<int>(cells.size());
                        int edges = e;
                        if (e > max_edges) {
                            edges = max_edges;
                            report.notes.push_back("config " + std::to_string(id) + ": " + std::to_string(e) +
                                                   " edges exceed the " + std::to_string(max_edges) +
                                                   " possible on " + std::to_string(spec.n_nodes) +
                                                   " nodes; using " + std::to_string(max_edges));
                        }
                        cells.push_back(Cell{id, gm, nz, edges, c, a});
                    }

    std::vector<Instance> instances;
    for (const Cell& c : cells) {
        if (c.clusters < 1 || c.clusters > spec.n_nodes) {
            report.skipped.push_back("config " + std::to_string(c.config_id) + ": " + std::to_string(c.clusters) +
                                     " clusters on " + std::to_string(spec.n_nodes) + " nodes");
            continue;
        }
        for (int rep = 0; rep < runs; ++rep) instances.push_back(Instance{&c, 0});
    }
    for (std::size_t i = 0; i < instances.size(); ++i) instances[i].seed = derive_seed(seed, i);

    std::vector<std::vector<ResultRow>> rows(instances.size());
    std::vector<std::string> errors(instances.size());
    const long count = static_cast<long>(instances.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
    for (long i = 0; i < count; ++i) {
        try {
            rows[i] = run_instance(spec, *instances[i].cell, instances[i].seed);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!errors[i].empty())
            report.skipped.push_back("config " + std::to_string(instances[i].cell->config_id) + " seed " +
                                     std::to_string(instances[i].seed) + ": " + errors[i]);
        for (auto& r : rows[i]) report.rows.push_back(std::move(r));
    }
    return report;
}

const char* const kResultsHeader =
    "study,config_id,seed,algorithm,n_nodes,n_edges,n_clusters,alpha,distribution,graph_method,adj_precision,"
    "adj_recall,adj_f1,arrow_precision,arrow_recall,arrow_f1,shd,ci_total,ci_unique,runtime_ms";

void write_results_csv(std::ostream& out, const ExperimentReport& r) {
    out << kResultsHeader << '\n';
    std::ostringstream line;
    for (const auto& row : r.rows) {
        line.str("");
        line << std::setprecision(10);
        line << row.study << ',' << row.config_id << ',' << row.seed << ',' << row.algorithm << ',' << row.n_nodes
             << ',' << row.n_edges << ',' << row.n_clusters << ',' << row.alpha << ',' << row.distribution << ','
             << row.graph_method << ',' << row.adj.precision << ',' << row.adj.recall << ',' << row.adj.f1 << ','
             << row.arrow.precision << ',' << row.arrow.recall << ',' << row.arrow.f1 << ',' << row.shd << ','
             << row.ci_total << ',' << row.ci_unique << ',' << row.runtime_ms;
        out << line.str() << '\n';
    }
}

std::vector<AggregateRow> aggregate(const ExperimentReport& r, bool per_config) {
    std::map<std::pair<std::string, int>, AggregateRow> groups;
    std::vector<std::pair<std::string, int>> order;
    for (const auto& row : r.rows) {
        std::pair<std::string, int> key{row.algorithm, per_config ? row.config_id : -1};
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        AggregateRow& a = it->second;
        a.algorithm = key.first;
        a.config_id = key.second;
        ++a.instances;
        a.adj_precision += row.adj.precision;
        a.adj_recall += row.adj.recall;
        a.adj_f1 += row.adj.f1;
        a.arrow_precision += row.arrow.precision;
        a.arrow_recall += row.arrow.recall;
        a.arrow_f1 += row.arrow.f1;
        a.adj_f1_alt += row.adj_f1_alt;
        a.arrow_f1_alt += row.arrow_f1_alt;
        a.shd += row.shd;
        a.ci_total += static_cast<double>(row.ci_total);
        a.ci_unique += static_cast<double>(row.ci_unique);
        a.runtime_ms += row.runtime_ms;
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    std::vector<AggregateRow> out;
    for (const auto& key : order) {
        AggregateRow a = groups.at(key);
        double k = a.instances;
        for (double* v : {&a.adj_precision, &a.adj_recall, &a.adj_f1, &a.arrow_precision, &a.arrow_recall,
                          &a.arrow_f1, &a.adj_f1_alt, &a.arrow_f1_alt, &a.shd, &a.ci_total, &a.ci_unique,
                          &a.runtime_ms})
            *v /= k;
        out.push_back(a);
    }
    return out;
}

void write_summary(std::ostream& out, const ExperimentReport& r) {
    bool conventional = r.spec.f1 == F1Formula::Conventional;
    const char* alt_name = conventional ? "halved" : "2pr/(p+r)";
    out << "study " << r.spec.name << ": " << r.rows.size() << " rows";
    if (!r.skipped.empty()) out << ", " << r.skipped.size() << " skipped";
    out << '\n';
    out << std::left << std::setw(13) << "algorithm" << std::right << std::setw(6) << "n" << std::setw(9)
        << "adj_p" << std::setw(9) << "adj_r" << std::setw(9) << "adj_f1" << std::setw(9) << "arr_p"
        << std::setw(9) << "arr_r" << std::setw(9) << "arr_f1" << std::setw(9) << "shd" << std::setw(11)
        << "ci_total" << "   f1 " << alt_name << " (adj/arrow)\n";
    out << std::fixed;
    for (const auto& a : aggregate(r, false)) {
        out << std::left << std::setw(13) << a.algorithm << std::right << std::setw(6) << a.instances
            << std::setprecision(3) << std::setw(9) << a.adj_precision << std::setw(9) << a.adj_recall
            << std::setw(9) << a.adj_f1 << std::setw(9) << a.arrow_precision << std::setw(9) << a.arrow_recall
            << std::setw(9) << a.arrow_f1 << std::setprecision(2) << std::setw(9) << a.shd << std::setprecision(1)
            << std::setw(11) << a.ci_total << "   " << std::setprecision(3) << a.adj_f1_alt << '/'
            << a.arrow_f1_alt << '\n';
    }
    out.unsetf(std::ios::fixed);
}

}  // namespace ccd
