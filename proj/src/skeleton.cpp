#include "skeleton.hpp"

#include <algorithm>

namespace ccd::detail {

NodeSet without(const NodeSet& s, int v) {
    NodeSet out;
    out.reserve(s.size());
    for (int x : s)
        if (x != v) out.push_back(x);
    return out;
}

std::optional<NodeSet> find_sepset(CiTester& t, int a, int b, const NodeSet& pool1, const NodeSet& pool2, int k) {
    std::optional<NodeSet> found;
    auto try_set = [&](const NodeSet& s) {
        if (!t.test(a, b, s).independent) return false;
        found = s;
        return true;
    };
    if (for_each_subset(pool1, k, try_set)) return found;
    for_each_subset(pool2, k, [&](const NodeSet& s) {
        if (std::includes(pool1.begin(), pool1.end(), s.begin(), s.end())) return false;
        return try_set(s);
    });
    return found;
}

int locale_size(const ClusterPartition& p, int m, const NodeSet& neighbours) {
    int size = static_cast<int>(p.members(m).size());
    for (int c : neighbours)
        if (c != m) size += static_cast<int>(p.members(c).size());
    return size;
}

void remove_edges(MixedGraph& g, const std::vector<std::pair<int, int>>& del) {
    for (auto [a, b] : del) g.remove_edge(a, b);
}

std::vector<std::string> lost_cluster_edges(const MixedGraph& g, const ClusterGraph& gc) {
    std::vector<std::string> out;
    const auto& p = gc.partition();
    for (int a = 0; a < gc.size(); ++a)
        for (int b = 0; b < gc.size(); ++b) {
            if (a == b || !gc.directed(a, b)) continue;
            bool kept = false;
            for (int x : p.members(a))
                for (int y : p.members(b))
                    if (g.adjacent(x, y)) kept = true;
            if (!kept)
                out.push_back("cluster edge " + p.name(a) + "->" + p.name(b) + " has no remaining micro edge");
        }
    return out;
}

}  // namespace ccd::detail
