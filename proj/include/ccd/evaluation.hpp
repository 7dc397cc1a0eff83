#pragma once

#include "ccd/discovery.hpp"
#include "ccd/synthesis.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccd {

enum class CompareMode { Adjacency, Arrow };

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;
    CompareMode mode = CompareMode::Adjacency;
};

ConfusionCounts confusion(const MixedGraph& est, const MixedGraph& ref, CompareMode mode);

enum class F1Formula {
    /// 2pr / (p + r)
    Conventional,
    /// pr / (p + r)
    Halved,
};

struct PrecisionRecall {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

PrecisionRecall precision_recall_f1(const ConfusionCounts& c, F1Formula f = F1Formula::Conventional);

/// One per unordered pair that differs in adjacency or in its mark pair.
int shd(const MixedGraph& g1, const MixedGraph& g2);

/// Skeleton plus v-structures of a DAG, closed under Meek's rules.
MixedGraph cpdag(const MixedGraph& dag);

/// CPDAG with every orientation of the cluster graph imposed, then closed
/// under Meek's rules.
MixedGraph impose_cluster_orientations(const MixedGraph& g, const ClusterGraph& gc);

enum class Family { Pc, Fci };
enum class PcReference { Cpdag, Mpdag, Dag };

MixedGraph reference_graph(const GroundTruth& truth, Family family, PcReference pc_ref = PcReference::Cpdag);

enum class Algorithm { Pc, ClusterPc, Fci, ClusterFci, ClusterFciNonPag };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);
Family family_of(Algorithm a);

struct StudySpec {
    std::string name = "custom";
    int n_nodes = 15;
    std::vector<int> edges{15};
    std::vector<int> clusters{3};
    std::vector<double> alphas{0.05};
    std::vector<GraphMethod> graph_methods{GraphMethod::ErdosRenyi};
    std::vector<Noise> noises{Noise::Gaussian};
    ClusterMethod cluster_method = ClusterMethod::DagFirst;
    int runs = 1;
    int n_samples = 1000;
    bool latents = false;
    /// Use the m-separation oracle of the true graph instead of Fisher-z.
    bool oracle = false;
    std::vector<Algorithm> algorithms{Algorithm::Pc, Algorithm::ClusterPc};
    double weight_low = -1.0;
    double weight_high = 2.0;
    F1Formula f1 = F1Formula::Conventional;
    PcReference pc_reference = PcReference::Cpdag;
    bool timing = false;
};

/// Preset grids for sim1..sim4.
StudySpec study_preset(const std::string& name);

struct ResultRow {
    std::string study;
    int config_id = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
    int n_nodes = 0;
    int n_edges = 0;
    int n_clusters = 0;
    double alpha = 0;
    std::string distribution;
    std::string graph_method;
    PrecisionRecall adj;
    PrecisionRecall arrow;
    int shd = 0;
    std::uint64_t ci_total = 0;
    std::uint64_t ci_unique = 0;
    double runtime_ms = 0;
    /// F1 under the formula not selected by the study.
    double adj_f1_alt = 0;
    double arrow_f1_alt = 0;
    int bk_violations = 0;
};

struct ExperimentReport {
    StudySpec spec;
    std::vector<ResultRow> rows;
    /// Cells that could not be generated, with the reason.
    std::vector<std::string> skipped;
    std::vector<std::string> notes;
};

/// Replications per cell: max(1, round(runs * scale)).
int scaled_runs(int runs, double scale);

/// Runs every cell of the grid. Instances are spread over `jobs` OpenMP
/// threads; output does not depend on `jobs`.
ExperimentReport run_study(const StudySpec& spec, double scale, std::uint64_t seed, int jobs = 1);

extern const char* const kResultsHeader;
void write_results_csv(std::ostream& out, const ExperimentReport& r);

struct AggregateRow {
    std::string algorithm;
    int config_id = -1;
    int instances = 0;
    double adj_precision = 0, adj_recall = 0, adj_f1 = 0;
    double arrow_precision = 0, arrow_recall = 0, arrow_f1 = 0;
    double adj_f1_alt = 0, arrow_f1_alt = 0;
    double shd = 0;
    double ci_total = 0, ci_unique = 0;
    double runtime_ms = 0;
};

/// Means per algorithm (config_id = -1) and per (algorithm, config_id).
std::vector<AggregateRow> aggregate(const ExperimentReport& r, bool per_config);

void write_summary(std::ostream& out, const ExperimentReport& r);

}  // namespace ccd
