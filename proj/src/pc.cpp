#include "ccd/discovery.hpp"

#include "skeleton.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ccd {

void SepSetRegistry::record(int a, int b, NodeSet s) { sets_[{std::min(a, b), std::max(a, b)}] = std::move(s); }

const NodeSet* SepSetRegistry::find(int a, int b) const {
    auto it = sets_.find({std::min(a, b), std::max(a, b)});
    return it == sets_.end() ? nullptr : &it->second;
}

namespace {

bool contains(const NodeSet& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); }

void check_size(const CiTester& t, int n) {
    if (t.num_vars() != n)
        throw std::invalid_argument("tester covers " + std::to_string(t.num_vars()) + " variables, graph has " +
                                    std::to_string(n));
}

// Orients the unshielded triples i - j - k, i - j <- k and i -> j - k that are
// not separated by j. Earlier orientations are never undone.
void orient_v_structures(MixedGraph& g, const SepSetRegistry& sep, DiscoveryOutput& out) {
    int n = g.size();
    for (int j = 0; j < n; ++j) {
        auto adj = g.adjacents(j);
        for (std::size_t a = 0; a < adj.size(); ++a)
            for (std::size_t b = a + 1; b < adj.size(); ++b) {
                int i = adj[a], k = adj[b];
                if (g.adjacent(i, k)) continue;
                bool ui = g.is_undirected(i, j), uk = g.is_undirected(k, j);
                bool di = g.is_directed(i, j), dk = g.is_directed(k, j);
                if (!((ui && uk) || (ui && dk) || (di && uk))) {
                    if ((g.is_directed(j, i) || g.is_directed(j, k)) && (ui || uk || di || dk)) {
                        const NodeSet* s = sep.find(i, k);
                        if (s && !contains(*s, j)) ++out.orientation_conflicts;
                    }
                    continue;
                }
                const NodeSet* s = sep.find(i, k);
                if (!s) {
                    ++out.unresolved_triples;
                    continue;
                }
                if (contains(*s, j)) continue;
                if (ui) g.add_directed(i, j);
                if (uk) g.add_directed(k, j);
            }
    }
}

DiscoveryOutput cluster_pc_core(CiTester& tester, const ClusterGraph& gc, std::string tag) {
    check_size(tester, gc.num_nodes());
    CountingTester counter(tester);
    DiscoveryOutput out;
    out.algorithm = std::move(tag);
    out.pag_mode = false;
    MixedGraph g = cdag_to_mpdag(gc);
    const auto& p = gc.partition();

    for (int m : gc.topological_order()) {
        const NodeSet& members = p.members(m);
        int locale = detail::locale_size(p, m, gc.parents(m));
        for (int k = 0; k <= locale - 2; ++k) {
            std::vector<std::pair<int, int>> del;
            for (int xj : members)
                for (int xi : g.parents(xj)) {
                    if (p.cluster_of(xi) == m) continue;
                    auto pool = detail::without(g.non_children(xj), xi);
                    if (auto s = detail::find_sepset(counter, xi, xj, pool, {}, k)) {
                        del.emplace_back(xi, xj);
                        out.sepsets.record(xi, xj, std::move(*s));
                    }
                }
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    int xi = members[a], xj = members[b];
                    if (!g.adjacent(xi, xj)) continue;
                    auto pool1 = detail::without(g.non_children(xj), xi);
                    auto pool2 = detail::without(g.non_children(xi), xj);
                    if (auto s = detail::find_sepset(counter, xi, xj, pool1, pool2, k)) {
                        del.emplace_back(xi, xj);
                        out.sepsets.record(xi, xj, std::move(*s));
                    }
                }
            detail::remove_edges(g, del);
        }
    }

    out.bk_violations = detail::lost_cluster_edges(g, gc);
    orient_v_structures(g, out.sepsets, out);
    out.graph = meek_closure(std::move(g));
    out.ci_stats = counter.stats();
    return out;
}

}  // namespace

DiscoveryOutput cluster_pc(CiTester& tester, const ClusterGraph& gc) {
    if (gc.has_bidirected()) throw GraphError("cluster PC needs a cluster DAG without bidirected edges");
    return cluster_pc_core(tester, gc, "cpc");
}

DiscoveryOutput pc(CiTester& tester, const std::vector<std::string>& labels) {
    int n = static_cast<int>(labels.size());
    ClusterGraph gc(ClusterPartition::single(n), labels);
    return cluster_pc_core(tester, gc, "pc");
}

}  // namespace ccd
