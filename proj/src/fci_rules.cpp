#include "ccd/discovery.hpp"
#include "ccd/separation.hpp"

#include <algorithm>
#include <functional>

namespace ccd {

const NodeSet* SepSetLookup::find(int a, int b) const {
    if (recorded)
        if (auto s = recorded->find(a, b)) return s;
    if (implied) {
        auto it = implied->find({std::min(a, b), std::max(a, b)});
        if (it != implied->end()) return &it->second;
    }
    return nullptr;
}

namespace {

bool contains(const NodeSet& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); }

bool mark_is(const MixedGraph& g, int at, int other, Mark m) { return g.mark_at(at, other) == m; }

// Changes a circle mark; any other existing mark is left alone.
bool orient(MixedGraph& g, int at, int other, Mark m, RuleLog& log) {
    Mark cur = g.mark_at(at, other);
    if (cur == m) return false;
    if (cur != Mark::Circle) {
        ++log.conflicts;
        return false;
    }
    g.set_mark_at(at, other, m);
    return true;
}

bool potentially_directed(const MixedGraph& g, int u, int v) {
    return g.mark_at(u, v) != Mark::Arrow && g.mark_at(v, u) != Mark::Tail;
}

// Uncovered potentially directed path continuing `path` to `target`.
bool extend_upd(const MixedGraph& g, std::vector<int>& path, std::vector<char>& used, int target, int avoid) {
    int u = path.back();
    int prev = path.size() >= 2 ? path[path.size() - 2] : -1;
    for (int v : g.adjacents(u)) {
        if (used[v] || v == avoid || !potentially_directed(g, u, v)) continue;
        if (prev >= 0 && g.adjacent(prev, v)) continue;
        if (v == target) return true;
        used[v] = 1;
        path.push_back(v);
        bool found = extend_upd(g, path, used, target, avoid);
        path.pop_back();
        used[v] = 0;
        if (found) return true;
    }
    return false;
}

// Is there an uncovered p.d. path alpha, first, ..., target avoiding `avoid`?
bool upd_path_via(const MixedGraph& g, int alpha, int first, int target, int avoid) {
    if (!potentially_directed(g, alpha, first)) return false;
    if (first == target) return true;
    std::vector<char> used(g.size(), 0);
    used[alpha] = used[first] = 1;
    std::vector<int> path{alpha, first};
    return extend_upd(g, path, used, target, avoid);
}

bool r1(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    int n = g.size();
    for (int b = 0; b < n; ++b)
        for (int a : g.adjacents(b)) {
            if (!mark_is(g, b, a, Mark::Arrow)) continue;
            for (int c : g.adjacents(b)) {
                if (c == a || g.adjacent(a, c) || !mark_is(g, b, c, Mark::Circle)) continue;
                changed |= orient(g, b, c, Mark::Tail, log);
                changed |= orient(g, c, b, Mark::Arrow, log);
            }
        }
    return changed;
}

bool r2(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    for (auto [x, y] : g.edges())
        for (auto [a, c] : {std::pair{x, y}, std::pair{y, x}}) {
            if (!mark_is(g, c, a, Mark::Circle)) continue;
            for (int b : g.adjacents(a)) {
                if (b == c || !g.adjacent(b, c)) continue;
                bool first = g.is_directed(a, b) && mark_is(g, c, b, Mark::Arrow);
                bool second = mark_is(g, b, a, Mark::Arrow) && g.is_directed(b, c);
                if (first || second) {
                    changed |= orient(g, c, a, Mark::Arrow, log);
                    break;
                }
            }
        }
    return changed;
}

bool r3(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    int n = g.size();
    for (int beta = 0; beta < n; ++beta)
        for (int theta : g.adjacents(beta)) {
            if (!mark_is(g, beta, theta, Mark::Circle)) continue;
            auto adj = g.adjacents(beta);
            bool fire = false;
            for (std::size_t i = 0; i < adj.size() && !fire; ++i)
                for (std::size_t j = i + 1; j < adj.size() && !fire; ++j) {
                    int a = adj[i], c = adj[j];
                    if (a == theta || c == theta || g.adjacent(a, c)) continue;
                    if (!mark_is(g, beta, a, Mark::Arrow) || !mark_is(g, beta, c, Mark::Arrow)) continue;
                    if (!g.adjacent(a, theta) || !g.adjacent(c, theta)) continue;
                    if (mark_is(g, theta, a, Mark::Circle) && mark_is(g, theta, c, Mark::Circle)) fire = true;
                }
            if (fire) changed |= orient(g, beta, theta, Mark::Arrow, log);
        }
    return changed;
}

bool r4(MixedGraph& g, const SepSetLookup& sep, RuleLog& log) {
    bool changed = false;
    int n = g.size();
    for (int beta = 0; beta < n; ++beta)
        for (int gamma : g.adjacents(beta)) {
            if (!mark_is(g, beta, gamma, Mark::Circle)) continue;
            auto path = discriminating_path(g, gamma, beta);
            if (!path) continue;
            int theta = path->front();
            int alpha = (*path)[path->size() - 3];
            const NodeSet* s = sep.find(theta, gamma);
            if (!s) {
                ++log.unresolved;
                continue;
            }
            if (contains(*s, beta)) {
                changed |= orient(g, beta, gamma, Mark::Tail, log);
                changed |= orient(g, gamma, beta, Mark::Arrow, log);
            } else {
                changed |= orient(g, beta, alpha, Mark::Arrow, log);
                changed |= orient(g, beta, gamma, Mark::Arrow, log);
                changed |= orient(g, gamma, beta, Mark::Arrow, log);
            }
        }
    return changed;
}

// Edges alpha o-> gamma, the common premise of R8-R10.
std::vector<std::pair<int, int>> circle_arrow_edges(const MixedGraph& g) {
    std::vector<std::pair<int, int>> out;
    for (auto [x, y] : g.edges()) {
        if (g.kind(x, y) == EdgeKind::CircleArrow) out.emplace_back(x, y);
        if (g.kind(x, y) == EdgeKind::ArrowCircle) out.emplace_back(y, x);
    }
    return out;
}

bool r8(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    for (auto [alpha, gamma] : circle_arrow_edges(g)) {
        for (int beta : g.adjacents(alpha)) {
            if (beta == gamma || !g.adjacent(beta, gamma) || !g.is_directed(beta, gamma)) continue;
            bool dir = g.is_directed(alpha, beta);
            bool tail_circle = mark_is(g, alpha, beta, Mark::Tail) && mark_is(g, beta, alpha, Mark::Circle);
            if (dir || tail_circle) {
                changed |= orient(g, alpha, gamma, Mark::Tail, log);
                break;
            }
        }
    }
    return changed;
}

bool r9(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    for (auto [alpha, gamma] : circle_arrow_edges(g)) {
        for (int beta : g.adjacents(alpha)) {
            if (beta == gamma || g.adjacent(beta, gamma)) continue;
            if (upd_path_via(g, alpha, beta, gamma, -1)) {
                changed |= orient(g, alpha, gamma, Mark::Tail, log);
                break;
            }
        }
    }
    return changed;
}

bool r10(MixedGraph& g, RuleLog& log) {
    bool changed = false;
    for (auto [alpha, gamma] : circle_arrow_edges(g)) {
        NodeSet pa;
        for (int v : g.adjacents(gamma))
            if (v != alpha && g.is_directed(v, gamma)) pa.push_back(v);
        if (pa.size() < 2) continue;
        auto firsts = [&](int target) {
            NodeSet out;
            for (int mu : g.adjacents(alpha))
                if (mu != gamma && upd_path_via(g, alpha, mu, target, gamma)) out.push_back(mu);
            return out;
        };
        std::vector<NodeSet> first_steps;
        for (int b : pa) first_steps.push_back(firsts(b));
        bool fire = false;
        for (std::size_t i = 0; i < pa.size() && !fire; ++i)
            for (std::size_t j = i + 1; j < pa.size() && !fire; ++j)
                for (int mu : first_steps[i])
                    for (int omega : first_steps[j])
                        if (mu != omega && !g.adjacent(mu, omega)) fire = true;
        if (fire) changed |= orient(g, alpha, gamma, Mark::Tail, log);
    }
    return changed;
}

}  // namespace

void orient_colliders(MixedGraph& g, const SepSetLookup& sep, RuleLog& log) {
    int n = g.size();
    for (int j = 0; j < n; ++j) {
        auto adj = g.adjacents(j);
        for (std::size_t a = 0; a < adj.size(); ++a)
            for (std::size_t b = a + 1; b < adj.size(); ++b) {
                int i = adj[a], k = adj[b];
                if (g.adjacent(i, k)) continue;
                const NodeSet* s = sep.find(i, k);
                if (!s) {
                    ++log.unresolved;
                    continue;
                }
                if (contains(*s, j)) continue;
                if (mark_is(g, j, i, Mark::Tail) || mark_is(g, j, k, Mark::Tail)) {
                    ++log.conflicts;
                    continue;
                }
                orient(g, j, i, Mark::Arrow, log);
                orient(g, j, k, Mark::Arrow, log);
            }
    }
}

void apply_fci_rules(MixedGraph& g, const SepSetLookup& sep, RuleLog& log) {
    bool changed = true;
    while (changed) {
        changed = false;
        changed |= r1(g, log);
        changed |= r2(g, log);
        changed |= r3(g, log);
        changed |= r4(g, sep, log);
        changed |= r8(g, log);
        changed |= r9(g, log);
        changed |= r10(g, log);
    }
}

}  // namespace ccd
