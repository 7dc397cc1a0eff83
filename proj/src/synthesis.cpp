#include "ccd/synthesis.hpp"

#include "ccd/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccd {

std::string to_string(GraphMethod m) {
    switch (m) {
        case GraphMethod::ErdosRenyi: return "erdos_renyi";
        case GraphMethod::ScaleFree: return "scale_free";
        case GraphMethod::Hierarchical: return "hierarchical";
    }
    return "?";
}

std::string to_string(ClusterMethod m) { return m == ClusterMethod::DagFirst ? "dag_first" : "cdag_first"; }

std::string to_string(Noise n) {
    switch (n) {
        case Noise::Gaussian: return "gaussian";
        case Noise::Exponential: return "exponential";
        case Noise::Gumbel: return "gumbel";
    }
    return "?";
}

namespace {

std::string normalized(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return c == '-' || c == ' ' ? '_' : static_cast<char>(std::tolower(c));
    });
    return s;
}

}  // namespace

GraphMethod parse_graph_method(const std::string& s) {
    auto v = normalized(s);
    if (v == "erdos_renyi" || v == "er") return GraphMethod::ErdosRenyi;
    if (v == "scale_free" || v == "sf") return GraphMethod::ScaleFree;
    if (v == "hierarchical") return GraphMethod::Hierarchical;
    throw std::invalid_argument("unknown graph method: " + s);
}

ClusterMethod parse_cluster_method(const std::string& s) {
    auto v = normalized(s);
    if (v == "dag_first" || v == "dag") return ClusterMethod::DagFirst;
    if (v == "cdag_first" || v == "cdag") return ClusterMethod::CdagFirst;
    throw std::invalid_argument("unknown cluster method: " + s);
}

Noise parse_noise(const std::string& s) {
    auto v = normalized(s);
    if (v == "gaussian" || v == "normal") return Noise::Gaussian;
    if (v == "exponential") return Noise::Exponential;
    if (v == "gumbel") return Noise::Gumbel;
    throw std::invalid_argument("unknown noise distribution: " + s);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void GenConfig::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be positive");
    if (n_edges < 0 || static_cast<long>(n_edges) > static_cast<long>(n_nodes) * (n_nodes - 1) / 2)
        throw std::invalid_argument("n_edges " + std::to_string(n_edges) + " infeasible for " +
                                    std::to_string(n_nodes) + " nodes");
    if (n_clusters < 1 || n_clusters > n_nodes) throw std::invalid_argument("n_clusters must lie in [1, n_nodes]");
    if (!(weight_low < weight_high)) throw std::invalid_argument("weight_low must be below weight_high");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be positive");
}

namespace {

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Picks m of the candidate pairs uniformly and adds them as directed edges.
void add_random_edges(MixedGraph& g, std::vector<std::pair<int, int>> cand, int m, Rng& rng) {
    if (m > static_cast<int>(cand.size()))
        throw std::invalid_argument("cannot place " + std::to_string(m) + " edges among " +
                                    std::to_string(cand.size()) + " admissible pairs");
    std::shuffle(cand.begin(), cand.end(), rng);
    for (int i = 0; i < m; ++i) g.add_directed(cand[i].first, cand[i].second);
}

MixedGraph erdos_renyi(int n, int m, Rng& rng) {
    auto perm = random_permutation(n, rng);
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cand.emplace_back(perm[i], perm[j]);
    MixedGraph g(n);
    add_random_edges(g, std::move(cand), m, rng);
    return g;
}

MixedGraph scale_free(int n, int m, Rng& rng) {
    // quota[t]: parents of the t-th inserted node, at most t, spread evenly.
    std::vector<int> quota(n, 0);
    int left = m;
    while (left > 0) {
        bool placed = false;
        for (int t = n - 1; t >= 1 && left > 0; --t)
            if (quota[t] < t) {
                ++quota[t];
                --left;
                placed = true;
            }
        if (!placed) throw std::invalid_argument("too many edges for a scale-free graph");
    }
    auto perm = random_permutation(n, rng);
    MixedGraph g(n);
    std::vector<double> degree(n, 0.0);
    for (int t = 1; t < n; ++t) {
        std::vector<int> pool(t);
        std::iota(pool.begin(), pool.end(), 0);
        for (int e = 0; e < quota[t]; ++e) {
            std::vector<double> w;
            for (int v : pool) w.push_back(degree[v] + 1.0);
            std::discrete_distribution<int> pick(w.begin(), w.end());
            int idx = pick(rng);
            int v = pool[idx];
            pool.erase(pool.begin() + idx);
            g.add_directed(perm[v], perm[t]);
            degree[v] += 1.0;
            degree[t] += 1.0;
        }
    }
    return g;
}

MixedGraph hierarchical(int n, int m, Rng& rng) {
    int layers = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    auto perm = random_permutation(n, rng);
    std::vector<int> layer(n);
    for (int i = 0; i < n; ++i) layer[perm[i]] = static_cast<int>(static_cast<long>(i) * layers / n);
    std::vector<std::pair<int, int>> cand;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (layer[a] < layer[b]) cand.emplace_back(a, b);
    std::sort(cand.begin(), cand.end());
    MixedGraph g(n);
    add_random_edges(g, std::move(cand), m, rng);
    return g;
}

std::vector<int> draw_cuts(int lo, int hi, int count, Rng& rng) {
    std::vector<int> pool;
    for (int v = lo; v <= hi; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

MixedGraph gen_dag(const GenConfig& cfg, Rng& rng) {
    cfg.validate();
    switch (cfg.graph_method) {
        case GraphMethod::ErdosRenyi: return erdos_renyi(cfg.n_nodes, cfg.n_edges, rng);
        case GraphMethod::ScaleFree: return scale_free(cfg.n_nodes, cfg.n_edges, rng);
        case GraphMethod::Hierarchical: return hierarchical(cfg.n_nodes, cfg.n_edges, rng);
    }
    throw std::logic_error("unhandled graph method");
}

ClusterPartition slice_partition(const std::vector<int>& order, int n_nodes, int r, Rng& rng, std::vector<int> cuts) {
    int n = static_cast<int>(order.size());
    if (r < 1 || r > n) throw std::invalid_argument("cluster count must lie in [1, " + std::to_string(n) + "]");
    if (cuts.empty()) cuts = draw_cuts(2, n, r - 1, rng);
    std::sort(cuts.begin(), cuts.end());
    if (static_cast<int>(cuts.size()) != r - 1 || std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end() ||
        (!cuts.empty() && (cuts.front() < 2 || cuts.back() > n)))
        throw std::invalid_argument("need " + std::to_string(r - 1) + " distinct cut points in [2, n]");
    std::vector<NodeSet> clusters(1);
    std::size_t next = 0;
    for (int pos = 1; pos <= n; ++pos) {
        if (next < cuts.size() && cuts[next] == pos) {
            clusters.emplace_back();
            ++next;
        }
        clusters.back().push_back(order[pos - 1]);
    }
    return ClusterPartition(n_nodes, std::move(clusters));
}

PartitionedDag partition_dag_first(const MixedGraph& dag, int r, Rng& rng, std::vector<int> cuts) {
    auto p = slice_partition(dag.topological_order(), dag.size(), r, rng, std::move(cuts));
    auto gc = build_cluster_graph(dag, p);
    return {std::move(p), std::move(gc)};
}

CdagFirst gen_cdag_first(const GenConfig& cfg, Rng& rng) {
    cfg.validate();
    int n = cfg.n_nodes, r = cfg.n_clusters;
    std::bernoulli_distribution cluster_edge(cfg.cluster_edge_prob);
    std::vector<std::vector<char>> cdir(r, std::vector<char>(r, 0));
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) cdir[a][b] = cluster_edge(rng);

    auto sizes_cut = draw_cuts(1, n - 1, r - 1, rng);
    std::vector<int> bounds{0};
    bounds.insert(bounds.end(), sizes_cut.begin(), sizes_cut.end());
    bounds.push_back(n);
    auto perm = random_permutation(n, rng);
    std::vector<int> cluster_of_pos(n);
    std::vector<NodeSet> clusters(r);
    for (int c = 0; c < r; ++c)
        for (int pos = bounds[c]; pos < bounds[c + 1]; ++pos) {
            cluster_of_pos[pos] = c;
            clusters[c].push_back(perm[pos]);
        }

    std::vector<std::pair<int, int>> full;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int ci = cluster_of_pos[i], cj = cluster_of_pos[j];
            if (ci == cj || cdir[ci][cj]) full.emplace_back(perm[i], perm[j]);
        }
    double keep = full.empty() ? 0.0 : std::min(1.0, static_cast<double>(cfg.n_edges) / full.size());
    std::bernoulli_distribution keep_edge(keep);
    MixedGraph dag(n);
    for (auto [a, b] : full)
        if (keep >= 1.0 || keep_edge(rng)) dag.add_directed(a, b);

    ClusterPartition p(n, std::move(clusters));
    auto gc = build_cluster_graph(dag, p);
    return {std::move(dag), std::move(gc)};
}

Eigen::MatrixXd draw_weights(const MixedGraph& dag, double low, double high, Rng& rng) {
    int n = dag.size();
    std::uniform_real_distribution<double> w(low, high);
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : dag.edges()) {
        if (dag.is_directed(a, b)) weights(a, b) = w(rng);
        else if (dag.is_directed(b, a)) weights(b, a) = w(rng);
        else throw GraphError("weights need a DAG");
    }
    return weights;
}

Eigen::MatrixXd population_covariance(const Eigen::MatrixXd& weights) {
    const auto n = weights.rows();
    Eigen::MatrixXd a = (Eigen::MatrixXd::Identity(n, n) - weights.transpose()).inverse();
    return a * a.transpose();
}

Eigen::MatrixXd sample_sem(const MixedGraph& dag, const Eigen::MatrixXd& weights, Noise noise, int n_samples,
                           Rng& rng) {
    int n = dag.size();
    Eigen::MatrixXd x(n_samples, n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::extreme_value_distribution<double> gumbel(0.0, 1.0);
    const double euler_gamma = 0.5772156649015329;
    const double gumbel_sd = M_PI / std::sqrt(6.0);
    auto draw = [&]() {
        switch (noise) {
            case Noise::Gaussian: return gauss(rng);
            case Noise::Exponential: return expo(rng) - 1.0;
            case Noise::Gumbel: return (gumbel(rng) - euler_gamma) / gumbel_sd;
        }
        return 0.0;
    };
    for (int i = 0; i < n_samples; ++i)
        for (int v = 0; v < n; ++v) x(i, v) = draw();
    for (int v : dag.topological_order())
        for (int p : dag.parents(v)) x.col(v) += weights(p, v) * x.col(p);
    return x;
}

Dataset sample_dataset(const MixedGraph& dag, const GenConfig& cfg, Rng& rng) {
    auto w = draw_weights(dag, cfg.weight_low, cfg.weight_high, rng);
    return Dataset{dag.labels(), sample_sem(dag, w, cfg.noise, cfg.n_samples, rng)};
}

MixedGraph project_to_mag(const MixedGraph& dag, const NodeSet& latents) {
    int n = dag.size();
    NodeSet observed;
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v)
        if (!contains_node(latents, v)) {
            observed.push_back(v);
            labels.push_back(dag.label(v));
        }
    MixedGraph mag(labels);
    int m = static_cast<int>(observed.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int x = observed[i], y = observed[j];
            if (!inducing_path(dag, x, y, latents)) continue;
            if (contains_node(dag.ancestors(y), x)) mag.add_directed(i, j);
            else if (contains_node(dag.ancestors(x), y)) mag.add_directed(j, i);
            else mag.add_bidirected(i, j);
        }
    return mag;
}

MixedGraph GroundTruth::observed_dag() const {
    if (!latents.empty()) throw GraphError("ground truth has latent variables");
    return dag;
}

namespace {

NodeSet latents_anywhere(const MixedGraph& dag, double prob, Rng& rng) {
    int n = dag.size();
    int cap = n / 3;
    if (cap < 1) return {};
    std::bernoulli_distribution coin(prob);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        NodeSet l;
        for (int v = 0; v < n; ++v)
            if (coin(rng)) l.push_back(v);
        if (!l.empty() && static_cast<int>(l.size()) <= cap) return l;
    }
    throw std::runtime_error("could not draw a latent set");
}

// Latents whose children all share their cluster, so no confounding crosses clusters.
NodeSet latents_within_clusters(const MixedGraph& dag, const ClusterPartition& p, double prob, Rng& rng) {
    int n = dag.size();
    int cap = n / 3;
    std::vector<int> observed_left(p.num_clusters());
    for (int c = 0; c < p.num_clusters(); ++c) observed_left[c] = static_cast<int>(p.members(c).size());
    std::bernoulli_distribution coin(prob);
    NodeSet l;
    for (int v : random_permutation(n, rng)) {
        auto ch = dag.children(v);
        int c = p.cluster_of(v);
        bool eligible = ch.size() >= 2 && std::all_of(ch.begin(), ch.end(), [&](int u) { return p.cluster_of(u) == c; });
        if (!eligible || observed_left[c] < 2 || static_cast<int>(l.size()) >= cap) continue;
        if (coin(rng)) {
            l.push_back(v);
            --observed_left[c];
        }
    }
    std::sort(l.begin(), l.end());
    return l;
}

ClusterPartition restrict_partition(const ClusterPartition& p, const NodeSet& observed) {
    std::vector<int> index(p.num_nodes(), -1);
    for (std::size_t i = 0; i < observed.size(); ++i) index[observed[i]] = static_cast<int>(i);
    std::vector<NodeSet> clusters;
    for (const auto& members : p.clusters()) {
        NodeSet c;
        for (int v : members)
            if (index[v] >= 0) c.push_back(index[v]);
        if (!c.empty()) clusters.push_back(std::move(c));
    }
    return ClusterPartition(static_cast<int>(observed.size()), std::move(clusters));
}

}  // namespace

GroundTruth gen_ground_truth(const GenConfig& cfg, bool with_latents) {
    cfg.validate();
    Rng rng(cfg.seed);
    GroundTruth t;
    t.config = cfg;
    std::optional<ClusterPartition> full_partition;
    if (cfg.cluster_method == ClusterMethod::CdagFirst) {
        auto c = gen_cdag_first(cfg, rng);
        t.dag = std::move(c.dag);
        full_partition = c.cluster_graph.partition();
        if (!with_latents) t.cluster_graph = std::move(c.cluster_graph);
    } else {
        t.dag = gen_dag(cfg, rng);
    }

    if (with_latents) {
        t.latents = cfg.cluster_method == ClusterMethod::CdagFirst
                        ? latents_within_clusters(t.dag, *full_partition, cfg.latent_prob, rng)
                        : latents_anywhere(t.dag, cfg.latent_prob, rng);
        for (int v = 0; v < t.dag.size(); ++v)
            if (!contains_node(t.latents, v)) t.observed.push_back(v);
        t.observed_mag = project_to_mag(t.dag, t.latents);
        ClusterPartition p;
        if (full_partition) {
            p = restrict_partition(*full_partition, t.observed);
        } else {
            std::vector<int> index(t.dag.size(), -1);
            for (std::size_t i = 0; i < t.observed.size(); ++i) index[t.observed[i]] = static_cast<int>(i);
            std::vector<int> order;
            for (int v : t.dag.topological_order())
                if (index[v] >= 0) order.push_back(index[v]);
            int r = std::min<int>(cfg.n_clusters, static_cast<int>(order.size()));
            p = slice_partition(order, static_cast<int>(order.size()), r, rng);
        }
        t.cluster_graph = build_cluster_graph(*t.observed_mag, p);
    } else {
        t.observed.resize(t.dag.size());
        std::iota(t.observed.begin(), t.observed.end(), 0);
        if (!full_partition) t.cluster_graph = partition_dag_first(t.dag, cfg.n_clusters, rng).cluster_graph;
    }

    t.weights = draw_weights(t.dag, cfg.weight_low, cfg.weight_high, rng);
    Eigen::MatrixXd all = sample_sem(t.dag, t.weights, cfg.noise, cfg.n_samples, rng);
    t.dataset.samples.resize(cfg.n_samples, static_cast<Eigen::Index>(t.observed.size()));
    for (std::size_t i = 0; i < t.observed.size(); ++i) {
        t.dataset.samples.col(static_cast<Eigen::Index>(i)) = all.col(t.observed[i]);
        t.dataset.labels.push_back(t.dag.label(t.observed[i]));
    }
    return t;
}

}  // namespace ccd
