#pragma once

#include "ccd/ci_test.hpp"
#include "ccd/cluster.hpp"
#include "ccd/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace ccd {

enum class GraphMethod { ErdosRenyi, ScaleFree, Hierarchical };
enum class ClusterMethod { DagFirst, CdagFirst };
enum class Noise { Gaussian, Exponential, Gumbel };

std::string to_string(GraphMethod m);
std::string to_string(ClusterMethod m);
std::string to_string(Noise n);
GraphMethod parse_graph_method(const std::string& s);
ClusterMethod parse_cluster_method(const std::string& s);
Noise parse_noise(const std::string& s);

using Rng = std::mt19937_64;

/// splitmix64 step, used to derive independent seeds from (seed, counter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

struct GenConfig {
    int n_nodes = 15;
    int n_edges = 15;
    int n_clusters = 3;
    GraphMethod graph_method = GraphMethod::ErdosRenyi;
    ClusterMethod cluster_method = ClusterMethod::DagFirst;
    Noise noise = Noise::Gaussian;
    double weight_low = -1.0;
    double weight_high = 2.0;
    int n_samples = 1000;
    std::uint64_t seed = 0;
    /// Edge probability of the cluster-level graph in cdag-first generation.
    double cluster_edge_prob = 0.5;
    /// Per-node latent probability when latents may sit anywhere.
    double latent_prob = 0.15;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

MixedGraph gen_dag(const GenConfig& cfg, Rng& rng);

/// Cuts a topological order of `g` into r contiguous slices. `cuts` are the
/// 1-based positions where a new cluster starts; when empty they are drawn
/// uniformly from {2, ..., n}.
ClusterPartition slice_partition(const std::vector<int>& order, int n_nodes, int r, Rng& rng,
                                 std::vector<int> cuts = {});

struct PartitionedDag {
    ClusterPartition partition;
    ClusterGraph cluster_graph;
};

PartitionedDag partition_dag_first(const MixedGraph& dag, int r, Rng& rng, std::vector<int> cuts = {});

struct CdagFirst {
    MixedGraph dag;
    ClusterGraph cluster_graph;
};

CdagFirst gen_cdag_first(const GenConfig& cfg, Rng& rng);

/// Weight matrix with w(i, j) the coefficient of edge i -> j.
Eigen::MatrixXd draw_weights(const MixedGraph& dag, double low, double high, Rng& rng);

/// Covariance of the linear SEM with unit-variance noise.
Eigen::MatrixXd population_covariance(const Eigen::MatrixXd& weights);

/// Samples every node of `dag`; columns follow node indices.
Eigen::MatrixXd sample_sem(const MixedGraph& dag, const Eigen::MatrixXd& weights, Noise noise, int n_samples,
                           Rng& rng);

/// Convenience: draw weights from cfg and return a dataset over all nodes.
Dataset sample_dataset(const MixedGraph& dag, const GenConfig& cfg, Rng& rng);

/// Latent projection onto the nodes not in `latents`, in increasing index order.
MixedGraph project_to_mag(const MixedGraph& dag, const NodeSet& latents);

struct GroundTruth {
    GenConfig config;
    MixedGraph dag;
    NodeSet latents;
    /// Indices into `dag` of the observed nodes, in order.
    NodeSet observed;
    /// Present when latents were requested.
    std::optional<MixedGraph> observed_mag;
    ClusterGraph cluster_graph;
    Eigen::MatrixXd weights;
    Dataset dataset;

    /// The true DAG restricted to observed nodes (only valid without latents).
    MixedGraph observed_dag() const;
};

/// Full instance. With latents, dag-first places them anywhere and
/// cdag-first keeps each latent and its children inside one cluster.
GroundTruth gen_ground_truth(const GenConfig& cfg, bool with_latents);

}  // namespace ccd
