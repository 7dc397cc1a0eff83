#include "ccd/separation.hpp"

#include "ccd/cluster.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace ccd {

namespace {

struct Half {
    int to;
    bool arrow_here;
    bool arrow_there;
};

using Adjacency = std::vector<std::vector<Half>>;

Adjacency adjacency_of(const MixedGraph& g) {
    Adjacency adj(g.size());
    for (auto [a, b] : g.edges()) {
        bool at_a = g.mark_at(a, b) == Mark::Arrow;
        bool at_b = g.mark_at(b, a) == Mark::Arrow;
        adj[a].push_back({b, at_a, at_b});
        adj[b].push_back({a, at_b, at_a});
    }
    return adj;
}

std::vector<char> flags(int n, const NodeSet& s) {
    std::vector<char> f(n, 0);
    for (int v : s) {
        if (v < 0 || v >= n) throw GraphError("unknown node " + std::to_string(v));
        f[v] = 1;
    }
    return f;
}

void check_disjoint(int n, const SeparationQuery& q) {
    std::vector<int> seen(n, 0);
    for (const NodeSet* s : {&q.left, &q.right, &q.given})
        for (int v : *s) {
            if (v < 0 || v >= n) throw GraphError("unknown node " + std::to_string(v));
            if (seen[v] && seen[v] != 1 + static_cast<int>(s - &q.left)) throw GraphError("separation query sets overlap");
            seen[v] = 1 + static_cast<int>(s - &q.left);
        }
}

// Ball passing over (node, entered-with-arrowhead) states.
bool connected(const Adjacency& adj, const std::vector<char>& given, const std::vector<char>& anc_given,
               const NodeSet& left, const std::vector<char>& right) {
    int n = static_cast<int>(adj.size());
    std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, bool>> stack;
    for (int x : left)
        for (const auto& e : adj[x]) {
            int s = 2 * e.to + e.arrow_there;
            if (!seen[s]) {
                seen[s] = 1;
                stack.emplace_back(e.to, e.arrow_there);
            }
        }
    while (!stack.empty()) {
        auto [v, in_arrow] = stack.back();
        stack.pop_back();
        if (right[v]) return true;
        for (const auto& e : adj[v]) {
            bool collider = in_arrow && e.arrow_here;
            bool pass = collider ? anc_given[v] != 0 : given[v] == 0;
            if (!pass) continue;
            int s = 2 * e.to + e.arrow_there;
            if (!seen[s]) {
                seen[s] = 1;
                stack.emplace_back(e.to, e.arrow_there);
            }
        }
    }
    return false;
}

NodeSet remove_from(NodeSet s, int v) {
    s.erase(std::remove(s.begin(), s.end(), v), s.end());
    return s;
}

}  // namespace

bool m_separated(const MixedGraph& g, const SeparationQuery& q) {
    if (g.has_circles()) throw GraphError("m-separation is undefined on graphs with circle marks");
    int n = g.size();
    check_disjoint(n, q);
    auto given = flags(n, q.given);
    auto anc = flags(n, g.ancestors_of(q.given));
    return !connected(adjacency_of(g), given, anc, q.left, flags(n, q.right));
}

bool m_separated(const MixedGraph& g, int x, int y, const NodeSet& given) {
    return m_separated(g, SeparationQuery{{x}, {y}, given});
}

bool d_separated(const MixedGraph& dag, const SeparationQuery& q) {
    if (!dag.all_directed()) throw GraphError("d-separation requires a directed graph");
    return m_separated(dag, q);
}

bool d_separated(const MixedGraph& dag, int x, int y, const NodeSet& given) {
    return d_separated(dag, SeparationQuery{{x}, {y}, given});
}

bool cluster_d_separated(const ClusterGraph& gc, const SeparationQuery& q) {
    int r = gc.size();
    check_disjoint(r, q);
    Adjacency adj(r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            if (a == b) continue;
            if (gc.directed(a, b)) {
                adj[a].push_back({b, false, true});
                adj[b].push_back({a, true, false});
            }
            if (a < b && gc.bidirected(a, b)) {
                adj[a].push_back({b, true, true});
                adj[b].push_back({a, true, true});
            }
        }
    auto given = flags(r, q.given);
    auto anc = flags(r, gc.ancestors_of(q.given));
    return !connected(adj, given, anc, q.left, flags(r, q.right));
}

bool inducing_path(const MixedGraph& g, int x, int y, const NodeSet& latents) {
    if (g.has_circles()) throw GraphError("inducing paths need a graph without circle marks");
    int n = g.size();
    if (x == y) throw GraphError("inducing path endpoints must differ");
    auto adj = adjacency_of(g);
    auto latent = flags(n, latents);
    auto anc = flags(n, g.ancestors_of({x, y}));
    std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, bool>> stack;
    for (const auto& e : adj[x]) {
        if (e.to == y) return true;
        seen[2 * e.to + e.arrow_there] = 1;
        stack.emplace_back(e.to, e.arrow_there);
    }
    while (!stack.empty()) {
        auto [v, in_arrow] = stack.back();
        stack.pop_back();
        for (const auto& e : adj[v]) {
            if (e.to == x) continue;
            bool collider = in_arrow && e.arrow_here;
            bool pass = collider ? anc[v] != 0 : latent[v] != 0;
            if (!pass) continue;
            if (e.to == y) return true;
            int s = 2 * e.to + e.arrow_there;
            if (!seen[s]) {
                seen[s] = 1;
                stack.emplace_back(e.to, e.arrow_there);
            }
        }
    }
    return false;
}

bool primitive_inducing_path(const MixedGraph& g, int x, int y) { return inducing_path(g, x, y, {}); }

NodeSet possible_d_sep(const MixedGraph& g, int xi, int xj) {
    if (xi == xj) throw GraphError("possible-d-sep needs two distinct nodes");
    int n = g.size();
    g.label(xj);
    std::vector<char> in_set(n, 0);
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    std::deque<std::pair<int, int>> queue;
    for (int u : g.adjacents(xi)) {
        in_set[u] = 1;
        seen[static_cast<std::size_t>(xi) * n + u] = 1;
        queue.emplace_back(xi, u);
    }
    while (!queue.empty()) {
        auto [p, c] = queue.front();
        queue.pop_front();
        for (int nx : g.adjacents(c)) {
            if (nx == p || nx == xi) continue;
            bool collider = g.mark_at(c, p) == Mark::Arrow && g.mark_at(c, nx) == Mark::Arrow;
            if (!collider && !g.adjacent(p, nx)) continue;
            auto s = static_cast<std::size_t>(c) * n + nx;
            if (seen[s]) continue;
            seen[s] = 1;
            in_set[nx] = 1;
            queue.emplace_back(c, nx);
        }
    }
    NodeSet out;
    for (int v = 0; v < n; ++v)
        if (in_set[v] && v != xi && v != xj) out.push_back(v);
    return out;
}

std::optional<std::vector<int>> discriminating_path(const MixedGraph& g, int y, int s, std::optional<int> theta) {
    if (y == s || !g.adjacent(s, y)) return std::nullopt;
    int n = g.size();
    // State (v, p): v is the newest interior node, p its neighbour toward s.
    std::map<std::pair<int, int>, std::pair<int, int>> parent;
    std::deque<std::pair<int, int>> queue;
    auto on_path = [&](std::pair<int, int> st, int w) {
        while (true) {
            if (st.first == w || st.second == w) return true;
            auto it = parent.find(st);
            if (it == parent.end() || it->second.first < 0) return false;
            st = it->second;
        }
    };
    auto build = [&](std::pair<int, int> st, int start) {
        std::vector<int> path{start};
        while (true) {
            path.push_back(st.first);
            auto prev = parent.at(st);
            if (prev.first < 0) break;
            st = prev;
        }
        path.push_back(s);
        path.push_back(y);
        return path;
    };
    for (int v = 0; v < n; ++v) {
        if (v == y || v == s || !g.adjacent(v, s)) continue;
        if (g.mark_at(v, s) != Mark::Arrow || !g.adjacent(v, y) || !g.is_directed(v, y)) continue;
        parent[{v, s}] = {-1, -1};
        queue.emplace_back(v, s);
    }
    while (!queue.empty()) {
        auto st = queue.front();
        queue.pop_front();
        int v = st.first;
        for (int w = 0; w < n; ++w) {
            if (w == y || w == s || !g.adjacent(v, w) || on_path(st, w)) continue;
            if (g.mark_at(v, w) != Mark::Arrow) continue;
            if (!g.adjacent(w, y)) {
                if (!theta || *theta == w) return build(st, w);
                continue;
            }
            if (!g.is_directed(w, y) || g.mark_at(w, v) != Mark::Arrow) continue;
            std::pair<int, int> next{w, v};
            if (parent.count(next)) continue;
            parent[next] = st;
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

namespace {

bool collider_at(const MixedGraph& g, int prev, int mid, int next) {
    return g.mark_at(mid, prev) == Mark::Arrow && g.mark_at(mid, next) == Mark::Arrow;
}

bool is_discriminating(const MixedGraph& g, const std::vector<int>& path) {
    std::size_t k = path.size();
    if (k < 4) return false;
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (!g.adjacent(path[i], path[i + 1])) return false;
    int y = path[k - 1];
    if (g.adjacent(path[0], y)) return false;
    for (std::size_t i = 1; i + 2 < k; ++i) {
        if (!collider_at(g, path[i - 1], path[i], path[i + 1])) return false;
        if (!g.adjacent(path[i], y) || !g.is_directed(path[i], y)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> all_discriminating_paths(const MixedGraph& g, std::size_t max_paths) {
    int n = g.size();
    std::vector<std::vector<int>> out;
    std::vector<int> rev;  // y, s, v1, v2, ...
    std::vector<char> used(n, 0);
    std::function<void()> extend = [&]() {
        if (out.size() >= max_paths) return;
        int y = rev[0];
        int v = rev.back();
        for (int w = 0; w < n; ++w) {
            if (used[w] || !g.adjacent(v, w) || g.mark_at(v, w) != Mark::Arrow) continue;
            if (!g.adjacent(w, y)) {
                std::vector<int> path(rev.rbegin(), rev.rend());
                path.insert(path.begin(), w);
                out.push_back(std::move(path));
                continue;
            }
            if (!g.is_directed(w, y) || g.mark_at(w, v) != Mark::Arrow) continue;
            used[w] = 1;
            rev.push_back(w);
            extend();
            rev.pop_back();
            used[w] = 0;
        }
    };
    for (int y = 0; y < n; ++y)
        for (int s : g.adjacents(y))
            for (int v : g.adjacents(s)) {
                if (v == y || g.mark_at(v, s) != Mark::Arrow || !g.adjacent(v, y) || !g.is_directed(v, y)) continue;
                rev = {y, s, v};
                std::fill(used.begin(), used.end(), 0);
                used[y] = used[s] = used[v] = 1;
                extend();
            }
    return out;
}

bool mags_markov_equivalent(const MixedGraph& g1, const MixedGraph& g2) {
    if (g1.size() != g2.size()) throw GraphError("graphs have different node sets");
    if (!is_mag(g1) || !is_mag(g2)) throw GraphError("Markov equivalence check needs two MAGs");
    int n = g1.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g1.adjacent(a, b) != g2.adjacent(a, b)) return false;
    for (int b = 0; b < n; ++b) {
        auto adj = g1.adjacents(b);
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = i + 1; j < adj.size(); ++j) {
                int a = adj[i], c = adj[j];
                if (g1.adjacent(a, c)) continue;
                if (collider_at(g1, a, b, c) != collider_at(g2, a, b, c)) return false;
            }
    }
    auto check = [](const MixedGraph& ga, const MixedGraph& gb) {
        for (const auto& path : all_discriminating_paths(ga)) {
            if (!is_discriminating(gb, path)) continue;
            std::size_t k = path.size();
            if (collider_at(ga, path[k - 3], path[k - 2], path[k - 1]) !=
                collider_at(gb, path[k - 3], path[k - 2], path[k - 1]))
                return false;
        }
        return true;
    };
    return check(g1, g2) && check(g2, g1);
}

NodeSet mns(const MixedGraph& dag, int x, int a) {
    if (x == a || dag.adjacent(x, a)) throw GraphError("mns needs a node outside the closed neighbourhood");
    auto de = dag.descendants(x);
    if (std::binary_search(de.begin(), de.end(), a)) throw GraphError("mns needs a non-descendant");
    NodeSet s = dag.parents(x);
    for (int p : NodeSet(s)) {
        auto smaller = remove_from(s, p);
        if (d_separated(dag, a, x, smaller)) s = smaller;
    }
    return s;
}

bool is_maximal(const MixedGraph& g) {
    if (g.has_circles()) throw GraphError("maximality is undefined on graphs with circle marks");
    int n = g.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) continue;
            auto an = remove_from(remove_from(g.ancestors_of({x, y}), x), y);
            if (m_separated(g, x, y, an)) continue;
            if (n > 12) return false;
            NodeSet others;
            for (int v = 0; v < n; ++v)
                if (v != x && v != y) others.push_back(v);
            bool found = false;
            for (std::uint32_t mask = 0; mask < (1u << others.size()) && !found; ++mask) {
                NodeSet s;
                for (std::size_t i = 0; i < others.size(); ++i)
                    if (mask & (1u << i)) s.push_back(others[i]);
                found = m_separated(g, x, y, s);
            }
            if (!found) return false;
        }
    return true;
}

GraphKindReport classify(const MixedGraph& g) {
    GraphKindReport r;
    bool circles = g.has_circles();
    bool cyclic = has_directed_cycle(g);
    r.has_almost_directed_cycle = has_almost_directed_cycle(g);
    bool only_dir_bi = true;
    bool undirected_ok = true;
    for (auto [a, b] : g.edges()) {
        EdgeKind k = g.kind(a, b);
        if (k != EdgeKind::Directed && k != EdgeKind::Reversed && k != EdgeKind::Bidirected) only_dir_bi = false;
        if (k == EdgeKind::Undirected) {
            for (int v : {a, b})
                for (int u : g.adjacents(v))
                    if (g.mark_at(v, u) == Mark::Arrow) undirected_ok = false;
        } else if (k != EdgeKind::Directed && k != EdgeKind::Reversed && k != EdgeKind::Bidirected) {
            undirected_ok = false;
        }
    }
    r.is_dag = !circles && !cyclic && g.all_directed();
    r.is_admg = !circles && !cyclic && only_dir_bi;
    r.is_ancestral = !circles && !cyclic && !r.has_almost_directed_cycle && undirected_ok;
    if (r.is_ancestral) r.is_maximal = is_maximal(g);
    return r;
}

bool is_mag(const MixedGraph& g) {
    auto r = classify(g);
    return r.is_admg && r.is_ancestral && r.is_maximal.value_or(false);
}

}  // namespace ccd
