#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

using ccd::Mark;

namespace {

bool directed(const MixedGraph& g, int a, int b) {
    return g.adjacent(a, b) && g.mark_at(a, b) == Mark::Tail && g.mark_at(b, a) == Mark::Arrow;
}

std::vector<char> descendant_or_self(const MixedGraph& g, int v) {
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w = 0; w < g.size(); ++w)
            if (!seen[w] && directed(g, u, w)) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

bool cyclic(const MixedGraph& g) {
    int n = g.size();
    std::vector<int> state(n, 0);
    std::function<bool(int)> visit = [&](int u) {
        state[u] = 1;
        for (int w = 0; w < n; ++w)
            if (directed(g, u, w)) {
                if (state[w] == 1) return true;
                if (state[w] == 0 && visit(w)) return true;
            }
        state[u] = 2;
        return false;
    };
    for (int u = 0; u < n; ++u)
        if (state[u] == 0 && visit(u)) return true;
    return false;
}

std::set<std::tuple<int, int, int>> v_structures(const MixedGraph& g) {
    std::set<std::tuple<int, int, int>> out;
    int n = g.size();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k)
                if (directed(g, i, j) && directed(g, k, j) && !g.adjacent(i, k)) out.insert({i, j, k});
    return out;
}

}  // namespace

bool separated_by_paths(const MixedGraph& g, int x, int y, const NodeSet& z) {
    int n = g.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && g.adjacent(a, b) && g.mark_at(a, b) == Mark::Circle)
                throw std::invalid_argument("circle marks");
    std::vector<char> in_z(n, 0);
    for (int v : z) in_z[v] = 1;
    std::vector<std::vector<char>> desc(n);
    for (int v = 0; v < n; ++v) desc[v] = descendant_or_self(g, v);
    auto collider_open = [&](int v) {
        for (int w = 0; w < n; ++w)
            if (desc[v][w] && in_z[w]) return true;
        return false;
    };
    std::vector<int> path{x};
    std::vector<char> on(n, 0);
    on[x] = 1;
    std::function<bool()> extend = [&]() {
        int u = path.back();
        for (int w = 0; w < n; ++w) {
            if (on[w] || !g.adjacent(u, w)) continue;
            if (path.size() >= 2) {
                int p = path[path.size() - 2];
                bool collider = g.mark_at(u, p) == Mark::Arrow && g.mark_at(u, w) == Mark::Arrow;
                if (collider ? !collider_open(u) : in_z[u]) continue;
            }
            if (w == y) return true;
            on[w] = 1;
            path.push_back(w);
            bool open = extend();
            path.pop_back();
            on[w] = 0;
            if (open) return true;
        }
        return false;
    };
    return !extend();
}

std::vector<MixedGraph> all_dags(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<MixedGraph> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        MixedGraph g(n);
        std::size_t c = code;
        for (auto [a, b] : pairs) {
            int d = static_cast<int>(c % 3);
            c /= 3;
            if (d == 1) g.add_directed(a, b);
            else if (d == 2) g.add_directed(b, a);
        }
        if (!cyclic(g)) out.push_back(std::move(g));
    }
    return out;
}

MixedGraph cpdag_by_enumeration(const MixedGraph& dag) {
    auto edges = dag.edges();
    auto target = v_structures(dag);
    std::vector<MixedGraph> members;
    for (std::size_t code = 0; code < (std::size_t{1} << edges.size()); ++code) {
        MixedGraph g(dag.labels());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            if (code >> e & 1) g.add_directed(b, a);
            else g.add_directed(a, b);
        }
        if (!cyclic(g) && v_structures(g) == target) members.push_back(std::move(g));
    }
    MixedGraph out(dag.labels());
    for (auto [a, b] : edges) {
        bool all_ab = true, all_ba = true;
        for (const auto& m : members) {
            all_ab = all_ab && directed(m, a, b);
            all_ba = all_ba && directed(m, b, a);
        }
        if (all_ab) out.add_directed(a, b);
        else if (all_ba) out.add_directed(b, a);
        else out.add_undirected(a, b);
    }
    return out;
}

ClusterGraph cluster_graph_by_definition(const MixedGraph& g, const ClusterPartition& p) {
    ClusterGraph gc(p, g.labels());
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
            int ca = p.cluster_of(a), cb = p.cluster_of(b);
            if (a == b || ca == cb || !g.adjacent(a, b)) continue;
            if (directed(g, a, b)) gc.add_directed(ca, cb);
            if (g.mark_at(a, b) == Mark::Arrow && g.mark_at(b, a) == Mark::Arrow) gc.set_bidirected(ca, cb);
        }
    return gc;
}

double partial_correlation_ols(const Eigen::MatrixXd& data, int x, int y, const NodeSet& s) {
    const auto n = data.rows();
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(s.size()) + 1);
    design.col(0).setOnes();
    for (std::size_t i = 0; i < s.size(); ++i) design.col(static_cast<Eigen::Index>(i) + 1) = data.col(s[i]);
    auto qr = design.householderQr();
    Eigen::VectorXd rx = data.col(x) - design * qr.solve(Eigen::VectorXd(data.col(x)));
    Eigen::VectorXd ry = data.col(y) - design * qr.solve(Eigen::VectorXd(data.col(y)));
    return rx.dot(ry) / std::sqrt(rx.squaredNorm() * ry.squaredNorm());
}

double fisher_z_p_value(double r, int n, int k) {
    double z = std::atanh(r) * std::sqrt(static_cast<double>(n - k - 3));
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

MixedGraph random_dag(int n, double p, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(p);
    MixedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_directed(perm[i], perm[j]);
    return g;
}

MixedGraph random_admg(int n, double p_dir, double p_bi, Rng& rng) {
    MixedGraph g = random_dag(n, p_dir, rng);
    std::bernoulli_distribution coin(p_bi);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j) && coin(rng)) g.add_bidirected(i, j);
    return g;
}

std::vector<int> random_topological_order(const MixedGraph& g, Rng& rng) {
    int n = g.size();
    std::vector<int> indeg(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && directed(g, a, b)) ++indeg[b];
    std::vector<int> order, ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
        std::size_t i = pick(rng);
        int v = ready[i];
        ready.erase(ready.begin() + static_cast<long>(i));
        order.push_back(v);
        for (int w = 0; w < n; ++w)
            if (w != v && directed(g, v, w) && --indeg[w] == 0) ready.push_back(w);
    }
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("cyclic graph");
    return order;
}

ClusterPartition random_admissible_partition(const MixedGraph& g, Rng& rng, int r) {
    int n = g.size();
    if (r <= 0) r = std::uniform_int_distribution<int>(1, n)(rng);
    auto order = random_topological_order(g, rng);
    std::vector<int> cuts(n - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(r - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<NodeSet> clusters(1);
    std::size_t next = 0;
    for (int i = 0; i < n; ++i) {
        if (next < cuts.size() && cuts[next] == i) {
            clusters.emplace_back();
            ++next;
        }
        clusters.back().push_back(order[i]);
    }
    return ClusterPartition(n, clusters);
}

ClusterPartition random_partition(int n, int r, Rng& rng) {
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::vector<NodeSet> clusters(r);
    std::uniform_int_distribution<int> pick(0, r - 1);
    for (int i = 0; i < n; ++i) clusters[i < r ? i : pick(rng)].push_back(nodes[i]);
    return ClusterPartition(n, clusters);
}

std::vector<NodeSet> subsets(const NodeSet& pool) {
    std::vector<NodeSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
        NodeSet s;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) s.push_back(pool[i]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace oracle
