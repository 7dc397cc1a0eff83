#pragma once

#include "ccd/graph.hpp"

#include <optional>
#include <vector>

namespace ccd {

class ClusterGraph;

struct SeparationQuery {
    NodeSet left;
    NodeSet right;
    NodeSet given;
};

/// Ball-passing m-separation. Works for DAGs, ADMGs, MAGs and graphs with
/// undirected edges; circle marks are rejected.
bool m_separated(const MixedGraph& g, const SeparationQuery& q);
bool m_separated(const MixedGraph& g, int x, int y, const NodeSet& given);

/// Same as m_separated but requires every edge to be directed.
bool d_separated(const MixedGraph& dag, const SeparationQuery& q);
bool d_separated(const MixedGraph& dag, int x, int y, const NodeSet& given);

/// Separation with clusters as nodes. A cluster pair may carry a directed and
/// a bidirected edge at once; both are followed.
bool cluster_d_separated(const ClusterGraph& gc, const SeparationQuery& q);

/// A path whose interior nodes are all colliders ancestral to x or y.
bool primitive_inducing_path(const MixedGraph& g, int x, int y);

/// Inducing path relative to `latents`: interior non-colliders must be
/// latent and every collider must be an ancestor of x or y.
bool inducing_path(const MixedGraph& g, int x, int y, const NodeSet& latents);

/// Nodes reachable from xi along paths where each interior node is a
/// collider or sits in a triangle. Walks are allowed, so the result may
/// contain a few extra nodes compared with the simple-path reading.
NodeSet possible_d_sep(const MixedGraph& g, int xi, int xj);

/// Shortest discriminating path <theta, ..., s, y> for s, with smallest-index
/// tie-breaking. If `theta` is set only paths starting there are accepted.
std::optional<std::vector<int>> discriminating_path(const MixedGraph& g, int y, int s,
                                                    std::optional<int> theta = std::nullopt);

/// Every discriminating path ending in (s, y) for some s, up to `max_paths`.
std::vector<std::vector<int>> all_discriminating_paths(const MixedGraph& g, std::size_t max_paths = 100000);

bool mags_markov_equivalent(const MixedGraph& g1, const MixedGraph& g2);

/// Minimal neighbour separator of a from x in a DAG.
NodeSet mns(const MixedGraph& dag, int x, int a);

}  // namespace ccd
