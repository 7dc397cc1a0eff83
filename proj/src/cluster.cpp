#include "ccd/cluster.hpp"

#include "ccd/separation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace ccd {

ClusterPartition::ClusterPartition(int n_nodes, std::vector<NodeSet> clusters, std::vector<std::string> names)
    : clusters_(std::move(clusters)), assignment_(n_nodes, -1), names_(std::move(names)) {
    for (int c = 0; c < num_clusters(); ++c) {
        auto& members = clusters_[c];
        if (members.empty()) throw GraphError("empty cluster");
        std::sort(members.begin(), members.end());
        for (int v : members) {
            if (v < 0 || v >= n_nodes) throw GraphError("cluster member out of range");
            if (assignment_[v] != -1) throw GraphError("clusters overlap at node " + std::to_string(v));
            assignment_[v] = c;
        }
    }
    for (int v = 0; v < n_nodes; ++v)
        if (assignment_[v] == -1) throw GraphError("node " + std::to_string(v) + " is in no cluster");
    if (names_.empty())
        for (int c = 0; c < num_clusters(); ++c) names_.push_back("C" + std::to_string(c + 1));
    if (static_cast<int>(names_.size()) != num_clusters()) throw GraphError("cluster name count mismatch");
}

ClusterPartition ClusterPartition::singletons(int n_nodes) {
    std::vector<NodeSet> cs;
    for (int v = 0; v < n_nodes; ++v) cs.push_back({v});
    return ClusterPartition(n_nodes, std::move(cs));
}

ClusterPartition ClusterPartition::single(int n_nodes) {
    NodeSet all(n_nodes);
    std::iota(all.begin(), all.end(), 0);
    return ClusterPartition(n_nodes, {all});
}

std::optional<int> ClusterPartition::find_name(const std::string& name) const {
    for (int c = 0; c < num_clusters(); ++c)
        if (names_[c] == name) return c;
    return std::nullopt;
}

ClusterGraph::ClusterGraph(ClusterPartition p, std::vector<std::string> node_labels)
    : partition_(std::move(p)), node_labels_(std::move(node_labels)) {
    if (node_labels_.empty()) node_labels_ = MixedGraph(partition_.num_nodes()).labels();
    if (static_cast<int>(node_labels_.size()) != partition_.num_nodes()) throw GraphError("node label count mismatch");
    auto r = static_cast<std::size_t>(size());
    dir_.assign(r * r, 0);
    bi_.assign(r * r, 0);
}

std::size_t ClusterGraph::idx(int a, int b) const {
    if (a < 0 || b < 0 || a >= size() || b >= size()) throw GraphError("unknown cluster");
    return static_cast<std::size_t>(a) * size() + b;
}

void ClusterGraph::add_directed(int from, int to) {
    if (from == to) throw GraphError("self-loop on cluster " + partition_.name(from));
    dir_[idx(from, to)] = 1;
}

void ClusterGraph::remove_directed(int from, int to) { dir_[idx(from, to)] = 0; }

void ClusterGraph::set_bidirected(int a, int b, bool on) {
    if (a == b) throw GraphError("self-loop on cluster " + partition_.name(a));
    bi_[idx(a, b)] = bi_[idx(b, a)] = on ? 1 : 0;
}

bool ClusterGraph::has_bidirected() const {
    return std::any_of(bi_.begin(), bi_.end(), [](auto v) { return v != 0; });
}

NodeSet ClusterGraph::parents(int c) const {
    NodeSet out;
    for (int d = 0; d < size(); ++d)
        if (directed(d, c)) out.push_back(d);
    return out;
}

NodeSet ClusterGraph::children(int c) const {
    NodeSet out;
    for (int d = 0; d < size(); ++d)
        if (directed(c, d)) out.push_back(d);
    return out;
}

NodeSet ClusterGraph::siblings(int c) const {
    NodeSet out;
    for (int d = 0; d < size(); ++d)
        if (d != c && bidirected(c, d)) out.push_back(d);
    return out;
}

NodeSet ClusterGraph::ancestors_of(const NodeSet& cs) const {
    std::vector<char> seen(size(), 0);
    std::vector<int> stack;
    for (int c : cs) {
        idx(c, c);
        if (!seen[c]) {
            seen[c] = 1;
            stack.push_back(c);
        }
    }
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int d = 0; d < size(); ++d)
            if (!seen[d] && directed(d, c)) {
                seen[d] = 1;
                stack.push_back(d);
            }
    }
    NodeSet out;
    for (int c = 0; c < size(); ++c)
        if (seen[c]) out.push_back(c);
    return out;
}

NodeSet ClusterGraph::ancestors(int c) const { return ancestors_of({c}); }

bool ClusterGraph::is_ancestor(int a, int b) const {
    auto an = ancestors(b);
    return std::binary_search(an.begin(), an.end(), a);
}

std::vector<int> ClusterGraph::topological_order() const {
    int r = size();
    std::vector<int> indeg(r, 0);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            if (directed(a, b)) ++indeg[b];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int c = 0; c < r; ++c)
        if (!indeg[c]) ready.push(c);
    std::vector<int> order;
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        order.push_back(c);
        for (int d = 0; d < r; ++d)
            if (directed(c, d) && --indeg[d] == 0) ready.push(d);
    }
    if (static_cast<int>(order.size()) != r) throw InadmissiblePartition("cluster graph has a directed cycle");
    return order;
}

bool ClusterGraph::is_acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const InadmissiblePartition&) {
        return false;
    }
}

bool ClusterGraph::operator==(const ClusterGraph& o) const {
    return partition_.clusters() == o.partition_.clusters() && dir_ == o.dir_ && bi_ == o.bi_;
}

ClusterGraph build_cluster_graph(const MixedGraph& g, const ClusterPartition& p) {
    if (p.num_nodes() != g.size()) throw GraphError("partition does not cover the graph's nodes");
    ClusterGraph gc(p, g.labels());
    for (auto [a, b] : g.edges()) {
        int ca = p.cluster_of(a), cb = p.cluster_of(b);
        if (ca == cb) continue;
        switch (g.kind(a, b)) {
            case EdgeKind::Directed: gc.add_directed(ca, cb); break;
            case EdgeKind::Reversed: gc.add_directed(cb, ca); break;
            case EdgeKind::Bidirected: gc.set_bidirected(ca, cb); break;
            default: throw GraphError("cluster graphs are built from directed and bidirected edges only");
        }
    }
    if (!gc.is_acyclic()) throw InadmissiblePartition("partition is not admissible: cluster graph has a directed cycle");
    return gc;
}

MixedGraph cdag_to_mpdag(const ClusterGraph& gc) {
    if (gc.has_bidirected()) throw GraphError("C-DAG to MPDAG needs a cluster graph without bidirected edges");
    if (!gc.is_acyclic()) throw InadmissiblePartition("cluster graph has a directed cycle");
    const auto& p = gc.partition();
    MixedGraph g(gc.node_labels());
    int n = g.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            int cx = p.cluster_of(x), cy = p.cluster_of(y);
            if (cx == cy)
                g.add_undirected(x, y);
            else if (gc.directed(cx, cy))
                g.add_directed(x, y);
            else if (gc.directed(cy, cx))
                g.add_directed(y, x);
        }
    return g;
}

bool cluster_inducing_path(const ClusterGraph& gc, int a, int b) {
    if (a == b) throw GraphError("inducing path endpoints must differ");
    int r = gc.size();
    auto anc = gc.ancestors_of({a, b});
    std::vector<char> is_anc(r, 0);
    for (int c : anc) is_anc[c] = 1;
    // Arrowhead at `to` when moving from -> to.
    auto arrow_options = [&](int from, int to) {
        std::vector<std::pair<bool, bool>> opts;  // (arrow at from, arrow at to)
        if (gc.directed(from, to)) opts.emplace_back(false, true);
        if (gc.directed(to, from)) opts.emplace_back(true, false);
        if (gc.bidirected(from, to)) opts.emplace_back(true, true);
        return opts;
    };
    std::vector<char> seen(2 * static_cast<std::size_t>(r), 0);
    std::vector<std::pair<int, bool>> stack;
    for (int c = 0; c < r; ++c) {
        if (c == a) continue;
        for (auto [at_from, at_to] : arrow_options(a, c)) {
            (void)at_from;
            if (c == b) return true;
            if (!seen[2 * c + at_to]) {
                seen[2 * c + at_to] = 1;
                stack.emplace_back(c, at_to);
            }
        }
    }
    while (!stack.empty()) {
        auto [v, in_arrow] = stack.back();
        stack.pop_back();
        if (!in_arrow || !is_anc[v]) continue;
        for (int c = 0; c < r; ++c) {
            if (c == v || c == a) continue;
            for (auto [at_v, at_c] : arrow_options(v, c)) {
                if (!at_v) continue;
                if (c == b) return true;
                if (!seen[2 * c + at_c]) {
                    seen[2 * c + at_c] = 1;
                    stack.emplace_back(c, at_c);
                }
            }
        }
    }
    return false;
}

MixedGraph cadmg_to_partial_mixed(const ClusterGraph& gc) {
    const auto& p = gc.partition();
    int r = gc.size();
    MixedGraph g(gc.node_labels());
    // Per ordered cluster pair, the marks (at first, at second), if any.
    std::vector<std::optional<std::pair<Mark, Mark>>> pair_marks(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            std::optional<std::pair<Mark, Mark>> m;
            bool fwd = gc.directed(i, j), bwd = gc.directed(j, i), bi = gc.bidirected(i, j);
            if (fwd && !bi) m = {{Mark::Tail, Mark::Arrow}};
            else if (bwd && !bi) m = {{Mark::Arrow, Mark::Tail}};
            else if (fwd && bi) m = {{Mark::Circle, Mark::Arrow}};
            else if (bwd && bi) m = {{Mark::Arrow, Mark::Circle}};
            else if (bi) m = {{Mark::Arrow, Mark::Arrow}};
            else if (cluster_inducing_path(gc, i, j)) {
                if (gc.is_ancestor(i, j)) m = {{Mark::Tail, Mark::Arrow}};
                else if (gc.is_ancestor(j, i)) m = {{Mark::Arrow, Mark::Tail}};
                else m = {{Mark::Arrow, Mark::Arrow}};
            }
            pair_marks[static_cast<std::size_t>(i) * r + j] = m;
        }
    int n = g.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            int cx = p.cluster_of(x), cy = p.cluster_of(y);
            if (cx == cy) {
                g.set_edge(x, y, Mark::Circle, Mark::Circle);
                continue;
            }
            const auto& m = pair_marks[static_cast<std::size_t>(cx) * r + cy];
            if (m) g.set_edge(x, y, m->first, m->second);
        }
    return g;
}

namespace {

std::string edge_text(const MixedGraph& g, int a, int b) {
    Mark ma = g.mark_at(a, b), mb = g.mark_at(b, a);
    std::string arrow = edge_arrow(ma, mb);
    if (arrow == "-->") arrow = "->";
    else if (arrow == "<--") arrow = "<-";
    else if (arrow == "---") arrow = "--";
    return g.label(a) + arrow + g.label(b);
}

std::string cluster_edge_text(const ClusterGraph& gc, int a, int b, const char* arrow) {
    return gc.partition().name(a) + arrow + gc.partition().name(b);
}

// Directed view of x -> y, swapping so arrowheads read left to right.
std::string oriented_text(const MixedGraph& g, int a, int b) {
    Mark ma = g.mark_at(a, b), mb = g.mark_at(b, a);
    if (ma == Mark::Arrow && mb != Mark::Arrow) return edge_text(g, b, a);
    return edge_text(g, a, b);
}

void check_partial_mixed(const MixedGraph& g, const ClusterGraph& gc, CompatibilityReport& rep) {
    MixedGraph pm = cadmg_to_partial_mixed(gc);
    for (auto [x, y] : g.edges()) {
        std::string what = "edge " + oriented_text(g, x, y);
        if (!pm.adjacent(x, y)) {
            rep.violations.push_back(what + " joins nodes that the cluster graph keeps apart");
            continue;
        }
        EdgeKind k = g.kind(x, y), kp = pm.kind(x, y);
        bool ok = false;
        switch (k) {
            case EdgeKind::CircleCircle: ok = kp == EdgeKind::CircleCircle; break;
            case EdgeKind::CircleArrow: ok = kp == EdgeKind::CircleCircle || kp == EdgeKind::CircleArrow; break;
            case EdgeKind::ArrowCircle: ok = kp == EdgeKind::CircleCircle || kp == EdgeKind::ArrowCircle; break;
            case EdgeKind::Bidirected:
                ok = kp == EdgeKind::CircleCircle || kp == EdgeKind::CircleArrow || kp == EdgeKind::ArrowCircle ||
                     kp == EdgeKind::Bidirected;
                break;
            case EdgeKind::Directed: {
                auto nch = pm.non_children(y);
                ok = std::binary_search(nch.begin(), nch.end(), x);
                break;
            }
            case EdgeKind::Reversed: {
                auto nch = pm.non_children(x);
                ok = std::binary_search(nch.begin(), nch.end(), y);
                break;
            }
            default: ok = false;
        }
        if (!ok) rep.violations.push_back(what + " contradicts " + oriented_text(pm, x, y));
    }
}

void check_pdag(const MixedGraph& g, const ClusterGraph& gc, CompatibilityReport& rep) {
    if (gc.has_bidirected()) {
        rep.violations.push_back("partially directed graphs need a cluster graph without bidirected edges");
        return;
    }
    MixedGraph mp = cdag_to_mpdag(gc);
    for (auto [x, y] : g.edges()) {
        std::string what = "edge " + oriented_text(g, x, y);
        if (!mp.adjacent(x, y)) {
            rep.violations.push_back(what + " joins nodes that the cluster graph keeps apart");
            continue;
        }
        EdgeKind k = g.kind(x, y), km = mp.kind(x, y);
        bool ok = (k == EdgeKind::Undirected && km == EdgeKind::Undirected) ||
                  ((k == EdgeKind::Directed || k == EdgeKind::Reversed) && (km == k || km == EdgeKind::Undirected));
        if (!ok) rep.violations.push_back(what + " contradicts " + oriented_text(mp, x, y));
    }
}

void check_admg(const MixedGraph& g, const ClusterGraph& gc, CompatibilityReport& rep) {
    const auto& p = gc.partition();
    int r = gc.size();
    std::vector<char> dir_seen(static_cast<std::size_t>(r) * r, 0), bi_seen(static_cast<std::size_t>(r) * r, 0);
    for (auto [x, y] : g.edges()) {
        int cx = p.cluster_of(x), cy = p.cluster_of(y);
        if (cx == cy) continue;
        EdgeKind k = g.kind(x, y);
        if (k == EdgeKind::Reversed) {
            std::swap(x, y);
            std::swap(cx, cy);
            k = EdgeKind::Directed;
        }
        std::string what = "edge " + edge_text(g, x, y);
        if (k == EdgeKind::Directed) {
            dir_seen[static_cast<std::size_t>(cx) * r + cy] = 1;
            if (gc.directed(cx, cy)) continue;
            if (gc.directed(cy, cx))
                rep.violations.push_back(what + " violates " + cluster_edge_text(gc, cy, cx, "->"));
            else
                rep.violations.push_back(what + " has no cluster edge " + cluster_edge_text(gc, cx, cy, "->"));
        } else {
            bi_seen[static_cast<std::size_t>(std::min(cx, cy)) * r + std::max(cx, cy)] = 1;
            if (!gc.bidirected(cx, cy))
                rep.violations.push_back(what + " has no cluster edge " + cluster_edge_text(gc, cx, cy, "<->"));
        }
    }
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            if (gc.directed(a, b) && !dir_seen[static_cast<std::size_t>(a) * r + b])
                rep.violations.push_back("cluster edge " + cluster_edge_text(gc, a, b, "->") + " has no micro edge");
            if (a < b && gc.bidirected(a, b) && !bi_seen[static_cast<std::size_t>(a) * r + b])
                rep.violations.push_back("cluster edge " + cluster_edge_text(gc, a, b, "<->") + " has no micro edge");
        }
}

}  // namespace

CompatibilityReport check_compatibility(const MixedGraph& g, const ClusterGraph& gc, GraphRole role) {
    if (g.size() != gc.num_nodes()) throw GraphError("graph and cluster graph have different node sets");
    if (role == GraphRole::Auto)
        role = g.has_circles() ? GraphRole::PartialMixed : g.has_undirected() ? GraphRole::Mpdag : GraphRole::Admg;
    CompatibilityReport rep;
    switch (role) {
        case GraphRole::PartialMixed: check_partial_mixed(g, gc, rep); break;
        case GraphRole::Mpdag: check_pdag(g, gc, rep); break;
        default: check_admg(g, gc, rep); break;
    }
    rep.compatible = rep.violations.empty();
    return rep;
}

bool is_compatible_graph(const MixedGraph& g, const ClusterGraph& gc, GraphRole role) {
    return check_compatibility(g, gc, role).compatible;
}

PairwiseConstraintSet pairwise_constraints(const ClusterGraph& gc, std::optional<bool> latent_clauses) {
    PairwiseConstraintSet bk;
    bk.partition = gc.partition();
    int r = gc.size();
    bool lat = latent_clauses.value_or(gc.has_bidirected());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            if (gc.directed(i, j))
                bk.clauses.push_back({ClauseKind::Dir, i, j});
            else if (gc.is_ancestor(i, j))
                bk.clauses.push_back({ClauseKind::Anc, i, j});
            else if (i < j && !gc.is_ancestor(j, i))
                bk.clauses.push_back({ClauseKind::NRel, i, j});
        }
    if (lat)
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                bk.clauses.push_back({gc.bidirected(i, j) ? ClauseKind::Lat : ClauseKind::NLat, i, j});
    return bk;
}

namespace {

std::vector<std::vector<char>> ancestry_matrix(const MixedGraph& g) {
    int n = g.size();
    std::vector<std::vector<char>> anc(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v)
        for (int a : g.ancestors(v)) anc[a][v] = 1;
    return anc;
}

bool clause_holds(const PairwiseClause& c, const ClusterPartition& p, const MixedGraph& g,
                  const std::vector<std::vector<char>>& anc) {
    const auto& ci = p.members(c.from);
    const auto& cj = p.members(c.to);
    bool any_edge = false;
    for (int xi : ci)
        for (int xj : cj) {
            bool edge = g.adjacent(xi, xj);
            switch (c.kind) {
                case ClauseKind::Dir:
                    if (anc[xj][xi]) return false;
                    if (edge && g.is_directed(xi, xj)) any_edge = true;
                    break;
                case ClauseKind::Anc:
                    if (anc[xj][xi] || (edge && g.is_directed(xi, xj))) return false;
                    break;
                case ClauseKind::NRel:
                    if (anc[xi][xj] || anc[xj][xi]) return false;
                    break;
                case ClauseKind::NLat:
                    if (edge && g.is_bidirected(xi, xj)) return false;
                    break;
                case ClauseKind::Lat:
                    if (edge && g.is_bidirected(xi, xj)) any_edge = true;
                    break;
            }
        }
    if (c.kind == ClauseKind::Dir || c.kind == ClauseKind::Lat) return any_edge;
    return true;
}

}  // namespace

std::vector<PairwiseClause> failing_clauses(const PairwiseConstraintSet& bk, const MixedGraph& g) {
    if (g.has_circles()) throw GraphError("pairwise constraints are evaluated on graphs without circle marks");
    if (g.size() != bk.partition.num_nodes()) throw GraphError("graph and constraints have different node sets");
    auto anc = ancestry_matrix(g);
    std::vector<PairwiseClause> out;
    for (const auto& c : bk.clauses)
        if (!clause_holds(c, bk.partition, g, anc)) out.push_back(c);
    return out;
}

bool evaluate_constraints(const PairwiseConstraintSet& bk, const MixedGraph& g) {
    return failing_clauses(bk, g).empty();
}

std::string describe_clause(const PairwiseClause& c, const ClusterPartition& p, const std::vector<std::string>& labels) {
    auto join = [&](int cl) {
        std::string s = "{";
        for (int v : p.members(cl)) s += (s.size() > 1 ? "," : "") + labels.at(v);
        return s + "}";
    };
    const std::string& a = p.name(c.from);
    const std::string& b = p.name(c.to);
    std::ostringstream out;
    switch (c.kind) {
        case ClauseKind::Dir:
            out << "dir(" << a << "," << b << "): no X in " << join(c.to) << " is an ancestor of any Y in "
                << join(c.from) << ", and some X->Y with X in " << join(c.from) << ", Y in " << join(c.to);
            break;
        case ClauseKind::Anc:
            out << "anc(" << a << "," << b << "): no X in " << join(c.to) << " is an ancestor of any Y in "
                << join(c.from) << ", and no direct edge from " << join(c.from) << " into " << join(c.to);
            break;
        case ClauseKind::NRel:
            out << "nrel(" << a << "," << b << "): no directed path between " << join(c.from) << " and "
                << join(c.to) << " in either direction";
            break;
        case ClauseKind::NLat:
            out << "nlat(" << a << "," << b << "): no bidirected edge between " << join(c.from) << " and "
                << join(c.to);
            break;
        case ClauseKind::Lat:
            out << "lat(" << a << "," << b << "): some bidirected edge between " << join(c.from) << " and "
                << join(c.to);
            break;
    }
    return out.str();
}

std::vector<NodeSet> tier_cluster_groups(const ClusterGraph& gc) {
    int r = gc.size();
    std::vector<int> root(r);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int c) { return root[c] == c ? c : root[c] = find(root[c]); };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    };
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            if (gc.bidirected(a, b)) unite(a, b);

    // Merge groups that reach each other through directed cluster edges.
    std::vector<std::vector<char>> reach(r, std::vector<char>(r, 0));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            if (gc.directed(a, b) && find(a) != find(b)) reach[find(a)][find(b)] = 1;
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < r; ++i)
            if (reach[i][k])
                for (int j = 0; j < r; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j && reach[i][j] && reach[j][i]) unite(i, j);

    std::vector<int> groups;
    for (int c = 0; c < r; ++c)
        if (find(c) == c) groups.push_back(c);
    int m = static_cast<int>(groups.size());
    std::vector<int> group_index(r, -1);
    for (int i = 0; i < m; ++i) group_index[groups[i]] = i;
    std::vector<std::vector<char>> edge(m, std::vector<char>(m, 0));
    std::vector<int> indeg(m, 0);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            int ga = group_index[find(a)], gb = group_index[find(b)];
            if (gc.directed(a, b) && ga != gb && !edge[ga][gb]) {
                edge[ga][gb] = 1;
                ++indeg[gb];
            }
        }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < m; ++i)
        if (!indeg[i]) ready.push(i);
    std::vector<NodeSet> out;
    while (!ready.empty()) {
        int i = ready.top();
        ready.pop();
        NodeSet members;
        for (int c = 0; c < r; ++c)
            if (group_index[find(c)] == i) members.push_back(c);
        out.push_back(members);
        for (int j = 0; j < m; ++j)
            if (edge[i][j] && --indeg[j] == 0) ready.push(j);
    }
    return out;
}

TierList tiers_from_cluster_graph(const ClusterGraph& gc) {
    TierList tiers;
    for (const auto& group : tier_cluster_groups(gc)) {
        NodeSet nodes;
        for (int c : group)
            for (int v : gc.partition().members(c)) nodes.push_back(v);
        std::sort(nodes.begin(), nodes.end());
        tiers.push_back(nodes);
    }
    return tiers;
}

bool satisfies_tiered_bk(const MixedGraph& g, const TierList& tiers) {
    if (!is_mag(g)) throw GraphError("tiered background knowledge is defined for MAGs");
    std::vector<int> tier_of(g.size(), -1);
    for (int t = 0; t < static_cast<int>(tiers.size()); ++t)
        for (int v : tiers[t]) tier_of.at(v) = t;
    for (int v = 0; v < g.size(); ++v)
        if (tier_of[v] < 0) throw GraphError("tiers do not cover every node");
    for (auto [a, b] : g.edges()) {
        if (tier_of[a] == tier_of[b]) continue;
        if (tier_of[a] > tier_of[b]) std::swap(a, b);
        auto an = g.ancestors(b);
        if (!std::binary_search(an.begin(), an.end(), a)) return false;
    }
    return true;
}

}  // namespace ccd
