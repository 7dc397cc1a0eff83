#pragma once

#include "ccd/ci_test.hpp"
#include "ccd/cluster.hpp"
#include "ccd/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccd {

/// Latest separating set found for each unordered node pair.
class SepSetRegistry {
public:
    void record(int a, int b, NodeSet s);
    const NodeSet* find(int a, int b) const;
    bool contains(int a, int b) const { return find(a, b) != nullptr; }
    std::size_t size() const { return sets_.size(); }
    const std::map<std::pair<int, int>, NodeSet>& entries() const { return sets_; }
    bool operator==(const SepSetRegistry& o) const { return sets_ == o.sets_; }

private:
    std::map<std::pair<int, int>, NodeSet> sets_;
};

struct DiscoveryOutput {
    MixedGraph graph;
    SepSetRegistry sepsets;
    CiStats ci_stats;
    std::string algorithm;
    bool pag_mode = true;
    std::vector<std::string> warnings;
    /// Cluster edges left without any micro edge by the skeleton search.
    std::vector<std::string> bk_violations;
    /// Triples skipped because no separating set was known for their endpoints.
    int unresolved_triples = 0;
    /// Orientation attempts that hit a non-circle or background mark.
    int orientation_conflicts = 0;
};

/// Meek rules R1-R4 applied to a fixed point. Only undirected edges change.
MixedGraph meek_closure(MixedGraph g);

DiscoveryOutput pc(CiTester& tester, const std::vector<std::string>& labels);
DiscoveryOutput cluster_pc(CiTester& tester, const ClusterGraph& gc);

struct FciOptions {
    bool pds_stage = true;
    /// Largest conditioning set size tried in the possible-d-sep stage.
    std::optional<int> max_pds_size;
};

DiscoveryOutput fci(CiTester& tester, const std::vector<std::string>& labels, const FciOptions& opts = {});
DiscoveryOutput cluster_fci(CiTester& tester, const ClusterGraph& gc, bool pag_mode = true,
                            const FciOptions& opts = {});

/// Sepsets available to orientation rules: recorded ones first, then sets
/// implied by the cluster graph.
struct SepSetLookup {
    const SepSetRegistry* recorded = nullptr;
    const std::map<std::pair<int, int>, NodeSet>* implied = nullptr;
    const NodeSet* find(int a, int b) const;
};

struct RuleLog {
    int conflicts = 0;
    int unresolved = 0;
};

/// R0 on every unshielded triple; only circle marks are changed.
void orient_colliders(MixedGraph& g, const SepSetLookup& sep, RuleLog& log);
/// R1-R4 and R8-R10 to a fixed point; only circle marks are changed.
void apply_fci_rules(MixedGraph& g, const SepSetLookup& sep, RuleLog& log);

}  // namespace ccd
