#include "ccd/discovery.hpp"

namespace ccd {

namespace {

bool rule1(const MixedGraph& g, int b, int c) {
    for (int a : g.parents(b))
        if (g.is_directed(a, b) && a != c && !g.adjacent(a, c)) return true;
    return false;
}

bool rule2(const MixedGraph& g, int a, int c) {
    for (int b : g.children(a))
        if (g.is_directed(a, b) && g.adjacent(b, c) && g.is_directed(b, c)) return true;
    return false;
}

bool rule3(const MixedGraph& g, int a, int b) {
    NodeSet cand;
    for (int c : g.adjacents(a))
        if (c != b && g.is_undirected(a, c) && g.adjacent(c, b) && g.is_directed(c, b)) cand.push_back(c);
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j)
            if (!g.adjacent(cand[i], cand[j])) return true;
    return false;
}

bool rule4(const MixedGraph& g, int a, int b) {
    for (int d : g.adjacents(b)) {
        if (d == a || !g.is_directed(d, b) || !g.adjacent(a, d)) continue;
        for (int c : g.adjacents(d))
            if (c != a && c != b && g.is_directed(c, d) && !g.adjacent(c, b) && g.adjacent(a, c) &&
                g.is_undirected(a, c))
                return true;
    }
    return false;
}

}  // namespace

MixedGraph meek_closure(MixedGraph g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [x, y] : g.edges()) {
            if (!g.is_undirected(x, y)) continue;
            for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
                if (rule1(g, a, b) || rule2(g, a, b) || rule3(g, a, b) || rule4(g, a, b)) {
                    g.add_directed(a, b);
                    changed = true;
                    break;
                }
            }
        }
    }
    return g;
}

}  // namespace ccd
