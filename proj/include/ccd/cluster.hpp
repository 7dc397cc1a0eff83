#pragma once

#include "ccd/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ccd {

class InadmissiblePartition : public GraphError {
public:
    using GraphError::GraphError;
};

/// Disjoint, non-empty clusters covering nodes 0..n-1.
class ClusterPartition {
public:
    ClusterPartition() = default;
    ClusterPartition(int n_nodes, std::vector<NodeSet> clusters, std::vector<std::string> names = {});

    /// Every node in a cluster of its own.
    static ClusterPartition singletons(int n_nodes);
    /// All nodes in one cluster.
    static ClusterPartition single(int n_nodes);

    int num_nodes() const { return static_cast<int>(assignment_.size()); }
    int num_clusters() const { return static_cast<int>(clusters_.size()); }
    const std::vector<NodeSet>& clusters() const { return clusters_; }
    const NodeSet& members(int c) const { return clusters_.at(c); }
    int cluster_of(int node) const { return assignment_.at(node); }
    const std::vector<int>& assignment() const { return assignment_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int c) const { return names_.at(c); }
    std::optional<int> find_name(const std::string& name) const;

private:
    std::vector<NodeSet> clusters_;
    std::vector<int> assignment_;
    std::vector<std::string> names_;
};

/// C-DAG or C-ADMG. A cluster pair can carry a directed and a bidirected edge
/// at the same time.
class ClusterGraph {
public:
    ClusterGraph() = default;
    explicit ClusterGraph(ClusterPartition p, std::vector<std::string> node_labels = {});

    const ClusterPartition& partition() const { return partition_; }
    const std::vector<std::string>& node_labels() const { return node_labels_; }
    int size() const { return partition_.num_clusters(); }
    int num_nodes() const { return partition_.num_nodes(); }

    void add_directed(int from, int to);
    void remove_directed(int from, int to);
    void set_bidirected(int a, int b, bool on = true);

    bool directed(int from, int to) const { return dir_.at(idx(from, to)) != 0; }
    bool bidirected(int a, int b) const { return bi_.at(idx(a, b)) != 0; }
    bool adjacent(int a, int b) const { return directed(a, b) || directed(b, a) || bidirected(a, b); }
    bool has_bidirected() const;

    NodeSet parents(int c) const;
    NodeSet children(int c) const;
    NodeSet siblings(int c) const;
    /// Reflexive ancestry over directed cluster edges.
    NodeSet ancestors(int c) const;
    NodeSet ancestors_of(const NodeSet& cs) const;
    bool is_ancestor(int a, int b) const;
    bool is_acyclic() const;
    /// Topological order of the directed part, smallest index first on ties.
    std::vector<int> topological_order() const;

    bool operator==(const ClusterGraph& o) const;
    bool operator!=(const ClusterGraph& o) const { return !(*this == o); }

private:
    std::size_t idx(int a, int b) const;

    ClusterPartition partition_;
    std::vector<std::string> node_labels_;
    std::vector<std::uint8_t> dir_;
    std::vector<std::uint8_t> bi_;
};

/// Lifts micro edges to clusters. Throws InadmissiblePartition when the
/// directed part becomes cyclic.
ClusterGraph build_cluster_graph(const MixedGraph& g, const ClusterPartition& p);

/// Start graph for cluster PC: undirected inside clusters, directed along
/// cluster edges, absent between non-adjacent clusters.
MixedGraph cdag_to_mpdag(const ClusterGraph& gc);

/// Start graph for cluster FCI.
MixedGraph cadmg_to_partial_mixed(const ClusterGraph& gc);

/// Inducing path between two clusters with clusters as nodes.
bool cluster_inducing_path(const ClusterGraph& gc, int a, int b);

struct CompatibilityReport {
    bool compatible = true;
    std::vector<std::string> violations;
};

/// Which compatibility clauses apply. Auto picks partial mixed when circles
/// are present, MPDAG when undirected edges are, and DAG/ADMG otherwise.
/// Circle-free MAGs and partial mixed graphs need PartialMixed explicitly.
enum class GraphRole { Auto, Admg, Mpdag, PartialMixed };

CompatibilityReport check_compatibility(const MixedGraph& g, const ClusterGraph& gc, GraphRole role = GraphRole::Auto);
bool is_compatible_graph(const MixedGraph& g, const ClusterGraph& gc, GraphRole role = GraphRole::Auto);

enum class ClauseKind { Dir, Anc, NRel, NLat, Lat };

/// Clause over the ordered cluster pair (from, to). NRel, NLat and Lat are
/// symmetric and are emitted once with from < to.
struct PairwiseClause {
    ClauseKind kind;
    int from;
    int to;
};

struct PairwiseConstraintSet {
    std::vector<PairwiseClause> clauses;
    ClusterPartition partition;
};

/// `latent_clauses` defaults to whether gc has any bidirected edge.
PairwiseConstraintSet pairwise_constraints(const ClusterGraph& gc, std::optional<bool> latent_clauses = std::nullopt);
bool evaluate_constraints(const PairwiseConstraintSet& bk, const MixedGraph& g);
/// Clauses that do not hold for g.
std::vector<PairwiseClause> failing_clauses(const PairwiseConstraintSet& bk, const MixedGraph& g);
std::string describe_clause(const PairwiseClause& c, const ClusterPartition& p, const std::vector<std::string>& labels);

using TierList = std::vector<NodeSet>;

/// Cluster groups in tier order; each group is a sorted list of cluster ids.
std::vector<NodeSet> tier_cluster_groups(const ClusterGraph& gc);
TierList tiers_from_cluster_graph(const ClusterGraph& gc);
bool satisfies_tiered_bk(const MixedGraph& g, const TierList& tiers);

/// `cluster C1: X1 X2` lines followed by cluster edges. With `known` the
/// node order follows the given labels.
ClusterGraph read_cluster_graph(std::istream& in, const std::vector<std::string>* known = nullptr);
ClusterGraph read_cluster_file(const std::string& path, const std::vector<std::string>* known = nullptr);
void write_cluster_graph(std::ostream& out, const ClusterGraph& gc);

}  // namespace ccd
