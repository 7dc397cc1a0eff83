#pragma once

#include "ccd/ci_test.hpp"
#include "ccd/discovery.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccd::detail {

NodeSet without(const NodeSet& s, int v);

/// Calls f on every size-k subset of pool in lexicographic order until f returns true.
template <class F>
bool for_each_subset(const NodeSet& pool, int k, F&& f) {
    int n = static_cast<int>(pool.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    NodeSet s(k);
    while (true) {
        for (int i = 0; i < k; ++i) s[i] = pool[idx[i]];
        if (f(s)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// First size-k subset of `pool1`, then of `pool2` (skipping subsets of
/// `pool1`), that separates a and b.
std::optional<NodeSet> find_sepset(CiTester& t, int a, int b, const NodeSet& pool1, const NodeSet& pool2, int k);

/// Size of C_m together with the clusters in `neighbours`.
int locale_size(const ClusterPartition& p, int m, const NodeSet& neighbours);

void remove_edges(MixedGraph& g, const std::vector<std::pair<int, int>>& del);

/// Cluster edges of gc without any surviving directed micro edge in g.
std::vector<std::string> lost_cluster_edges(const MixedGraph& g, const ClusterGraph& gc);

}  // namespace ccd::detail
