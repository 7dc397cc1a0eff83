#include "ccd/discovery.hpp"
#include "ccd/separation.hpp"

#include "skeleton.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace ccd {

namespace {

using PairMap = std::map<std::pair<int, int>, NodeSet>;

// Sepsets for cross-cluster pairs that the cluster graph separates without a test.
PairMap implied_sepsets(const MixedGraph& start, const ClusterGraph& gc, DiscoveryOutput& out) {
    PairMap implied;
    const auto& p = gc.partition();
    int r = gc.size();
    std::vector<std::vector<char>> checked(r, std::vector<char>(r, 0));
    std::vector<std::vector<std::optional<NodeSet>>> by_cluster(r, std::vector<std::optional<NodeSet>>(r));
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
            NodeSet z;
            for (int c : gc.ancestors_of({a, b}))
                if (c != a && c != b) z.push_back(c);
            if (!cluster_d_separated(gc, SeparationQuery{{a}, {b}, z})) continue;
            NodeSet nodes;
            for (int c : z) nodes.insert(nodes.end(), p.members(c).begin(), p.members(c).end());
            std::sort(nodes.begin(), nodes.end());
            by_cluster[a][b] = nodes;
        }
    int n = start.size();
    int missing = 0;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (start.adjacent(x, y)) continue;
            int a = std::min(p.cluster_of(x), p.cluster_of(y)), b = std::max(p.cluster_of(x), p.cluster_of(y));
            if (by_cluster[a][b]) implied[{x, y}] = *by_cluster[a][b];
            else ++missing;
        }
    if (missing > 0)
        out.warnings.push_back(std::to_string(missing) + " non-adjacent pairs have no separating set implied by the cluster graph");
    return implied;
}

// Highest skeleton level at which each pair was examined.
using LevelMap = std::map<std::pair<int, int>, int>;

// Possible-d-sep re-testing. Sets the skeleton stage already tried for the
// pair (fitting in one of its final non-child pools at a level it reached)
// are not tested again.
void pds_stage(MixedGraph& g, const MixedGraph& skeleton, const LevelMap& levels, CountingTester& t,
               const FciOptions& opts, SepSetRegistry& sep) {
    int n = g.size();
    for (int xi = 0; xi < n; ++xi)
        for (int xj : g.adjacents(xi)) {
            if (!g.adjacent(xi, xj)) continue;
            NodeSet pds = detail::without(possible_d_sep(g, xi, xj), xj);
            auto lv = levels.find({std::min(xi, xj), std::max(xi, xj)});
            int tried = lv == levels.end() ? -1 : lv->second;
            auto pool1 = detail::without(skeleton.non_children(xj), xi);
            auto pool2 = detail::without(skeleton.non_children(xi), xj);
            auto tested = [&](const NodeSet& s) {
                if (static_cast<int>(s.size()) > tried) return false;
                return std::includes(pool1.begin(), pool1.end(), s.begin(), s.end()) ||
                       std::includes(pool2.begin(), pool2.end(), s.begin(), s.end());
            };
            int max_k = static_cast<int>(pds.size());
            if (opts.max_pds_size) max_k = std::min(max_k, *opts.max_pds_size);
            std::optional<NodeSet> found;
            for (int k = 0; k <= max_k && !found; ++k)
                detail::for_each_subset(pds, k, [&](const NodeSet& s) {
                    if (tested(s) || !t.test(xi, xj, s).independent) return false;
                    found = s;
                    return true;
                });
            if (found) {
                g.remove_edge(xi, xj);
                sep.record(xi, xj, std::move(*found));
            }
        }
}

// Resets every surviving edge to the marks of the start graph. Returns the
// number of collider-stage arrowheads dropped in the process.
int reorient(MixedGraph& g, const MixedGraph& start) {
    int dropped = 0;
    for (auto [x, y] : g.edges()) {
        for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}})
            if (g.mark_at(a, b) == Mark::Arrow && start.mark_at(a, b) != Mark::Arrow) ++dropped;
        g.set_edge(x, y, start.mark_at(x, y), start.mark_at(y, x));
    }
    return dropped;
}

// Turns x <-> y into x -> y whenever x is an ancestor of y.
void repair_almost_cycles(MixedGraph& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [x, y] : g.edges()) {
            if (!g.is_bidirected(x, y)) continue;
            if (contains_node(g.ancestors(y), x)) {
                g.set_mark_at(x, y, Mark::Tail);
                changed = true;
            } else if (contains_node(g.ancestors(x), y)) {
                g.set_mark_at(y, x, Mark::Tail);
                changed = true;
            }
        }
    }
}

DiscoveryOutput cluster_fci_core(CiTester& tester, const ClusterGraph& gc, bool repair, const FciOptions& opts,
                                 std::string tag) {
    if (tester.num_vars() != gc.num_nodes())
        throw std::invalid_argument("tester covers " + std::to_string(tester.num_vars()) + " variables, graph has " +
                                    std::to_string(gc.num_nodes()));
    CountingTester counter(tester);
    DiscoveryOutput out;
    out.algorithm = std::move(tag);
    out.pag_mode = repair;
    const MixedGraph start = cadmg_to_partial_mixed(gc);
    MixedGraph g = start;
    const auto& p = gc.partition();
    LevelMap levels;

    for (int m : gc.topological_order()) {
        NodeSet around = gc.parents(m);
        for (int s : gc.siblings(m))
            if (!contains_node(around, s)) around.push_back(s);
        int locale = detail::locale_size(p, m, around);
        for (int k = 0; k <= locale - 2; ++k) {
            std::vector<std::pair<int, int>> del;
            std::set<std::pair<int, int>> seen;
            for (int xi : p.members(m))
                for (int xj : g.non_children(xi)) {
                    if (!seen.insert({std::min(xi, xj), std::max(xi, xj)}).second) continue;
                    auto& level = levels[{std::min(xi, xj), std::max(xi, xj)}];
                    level = std::max(level, k);
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
    const MixedGraph skeleton = g;

    PairMap implied = implied_sepsets(start, gc, out);
    SepSetLookup lookup{&out.sepsets, &implied};
    RuleLog log;
    orient_colliders(g, lookup, log);
    if (opts.pds_stage) pds_stage(g, skeleton, levels, counter, opts, out.sepsets);

    if (int dropped = reorient(g, start); dropped > 0)
        out.warnings.push_back(std::to_string(dropped) + " collider-stage arrowheads replaced by cluster-graph marks");
    if (repair) repair_almost_cycles(g);
    orient_colliders(g, lookup, log);
    apply_fci_rules(g, lookup, log);

    out.graph = std::move(g);
    out.unresolved_triples = log.unresolved;
    out.orientation_conflicts = log.conflicts;
    out.ci_stats = counter.stats();
    return out;
}

}  // namespace

DiscoveryOutput fci(CiTester& tester, const std::vector<std::string>& labels, const FciOptions& opts) {
    int n = static_cast<int>(labels.size());
    ClusterGraph gc(ClusterPartition::single(n), labels);
    return cluster_fci_core(tester, gc, false, opts, "fci");
}

DiscoveryOutput cluster_fci(CiTester& tester, const ClusterGraph& gc, bool pag_mode, const FciOptions& opts) {
    return cluster_fci_core(tester, gc, pag_mode, opts, pag_mode ? "cfci" : "cfci-nonpag");
}

}  // namespace ccd
