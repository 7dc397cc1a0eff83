#include <doctest.h>

#include "ccd/evaluation.hpp"
#include "ccd/kernels.hpp"
#include "oracles/oracles.hpp"

#include <sstream>

using namespace ccd;

namespace {

GroundTruth truth_from_dag(const MixedGraph& dag) {
    GroundTruth t;
    t.dag = dag;
    for (int v = 0; v < dag.size(); ++v) t.observed.push_back(v);
    t.cluster_graph = ClusterGraph(ClusterPartition::single(dag.size()), dag.labels());
    t.dataset.labels = dag.labels();
    return t;
}

StudySpec tiny_spec() {
    StudySpec s;
    s.name = "tiny";
    s.n_nodes = 8;
    s.edges = {8, 12};
    s.clusters = {1, 3};
    s.alphas = {0.05};
    s.runs = 3;
    s.n_samples = 300;
    return s;
}

std::string csv(const ExperimentReport& r) {
    std::ostringstream out;
    write_results_csv(out, r);
    return out.str();
}

}  // namespace

TEST_CASE("confusion examples") {
    MixedGraph fwd(2), rev(2);
    fwd.add_directed(0, 1);
    rev.add_directed(1, 0);

    auto same = confusion(fwd, fwd, CompareMode::Adjacency);
    CHECK(same.tp == 1);
    CHECK(same.fp == 0);
    CHECK(same.fn == 0);

    auto arrows = confusion(fwd, rev, CompareMode::Arrow);
    CHECK(arrows.tp == 0);
    CHECK(arrows.fp == 1);
    CHECK(arrows.fn == 1);
    CHECK(arrows.tn == 0);

    auto missing = confusion(MixedGraph(2), fwd, CompareMode::Adjacency);
    CHECK(missing.fn == 1);
    CHECK(missing.tp == 0);

    MixedGraph three(3);
    three.add_directed(0, 1);
    auto counts = confusion(three, three, CompareMode::Adjacency);
    CHECK(counts.tp + counts.fp + counts.fn + counts.tn == 3);
    auto marks = confusion(three, three, CompareMode::Arrow);
    CHECK(marks.tp + marks.fp + marks.fn + marks.tn == 2);

    CHECK_THROWS_AS(confusion(MixedGraph(2), MixedGraph(3), CompareMode::Adjacency), GraphError);
}

TEST_CASE("circle marks count as negatives") {
    MixedGraph est(2), ref(2);
    est.set_edge(0, 1, Mark::Circle, Mark::Arrow);
    ref.add_bidirected(0, 1);
    auto c = confusion(est, ref, CompareMode::Arrow);
    CHECK(c.tp == 1);
    CHECK(c.fn == 1);
    CHECK(c.fp == 0);
}

TEST_CASE("precision, recall and both F1 formulas") {
    ConfusionCounts perfect{1, 0, 0, 0};
    auto h = precision_recall_f1(perfect, F1Formula::Halved);
    CHECK(h.precision == 1.0);
    CHECK(h.recall == 1.0);
    CHECK(h.f1 == 0.5);
    CHECK(precision_recall_f1(perfect).f1 == 1.0);

    auto zero = precision_recall_f1(ConfusionCounts{0, 0, 0, 0}, F1Formula::Halved);
    CHECK(zero.precision == 0.0);
    CHECK(zero.recall == 0.0);
    CHECK(zero.f1 == 0.0);
    CHECK(precision_recall_f1(ConfusionCounts{0, 3, 2, 0}).f1 == 0.0);

    auto half = precision_recall_f1(ConfusionCounts{2, 2, 2, 0}, F1Formula::Halved);
    CHECK(half.precision == 0.5);
    CHECK(half.recall == 0.5);
    CHECK(half.f1 == 0.25);
    CHECK(precision_recall_f1(ConfusionCounts{2, 2, 2, 0}).f1 == 0.5);

    // 87.9% precision and 46.5% recall give 60.8% conventional F1.
    PrecisionRecall from_table{0.879, 0.465, 0};
    double conventional = 2 * from_table.precision * from_table.recall / (from_table.precision + from_table.recall);
    CHECK(conventional == doctest::Approx(0.608).epsilon(0.002));
}

TEST_CASE("structural Hamming distance") {
    MixedGraph fwd(3), rev(3), chain(3);
    fwd.add_directed(0, 1);
    rev.add_directed(1, 0);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    CHECK(shd(fwd, rev) == 1);
    CHECK(shd(chain, MixedGraph(3)) == 2);
    CHECK(shd(chain, chain) == 0);

    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        auto a = oracle::random_admg(6, 0.3, 0.2, rng);
        auto b = oracle::random_admg(6, 0.3, 0.2, rng);
        CHECK(shd(a, b) == shd(b, a));
        CHECK(shd(a, a) == 0);
        auto c = confusion(a, a, CompareMode::Adjacency);
        CHECK(c.fp == 0);
        CHECK(c.fn == 0);
        if (a.num_edges() > 0) CHECK(precision_recall_f1(c, F1Formula::Halved).f1 == 0.5);
    }
}

TEST_CASE("reference graphs") {
    MixedGraph col(3);
    col.add_directed(0, 1);
    col.add_directed(2, 1);
    CHECK(reference_graph(truth_from_dag(col), Family::Pc) == col);

    MixedGraph chain(3);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    auto ref = reference_graph(truth_from_dag(chain), Family::Pc);
    CHECK(ref.is_undirected(0, 1));
    CHECK(ref.is_undirected(1, 2));
    CHECK(reference_graph(truth_from_dag(chain), Family::Pc, PcReference::Dag) == chain);

    CHECK_THROWS_AS(reference_graph(truth_from_dag(chain), Family::Fci), std::invalid_argument);

    MixedGraph bi(3);
    bi.add_bidirected(0, 1);
    auto t = truth_from_dag(MixedGraph(3));
    t.observed_mag = bi;
    auto pag = reference_graph(t, Family::Fci);
    CHECK(pag.num_edges() == 1);
    CHECK(pag.kind(0, 1) == EdgeKind::CircleCircle);
}

TEST_CASE("MPDAG reference imposes the cluster orientations") {
    MixedGraph chain(3);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    auto t = truth_from_dag(chain);
    t.cluster_graph = build_cluster_graph(chain, ClusterPartition(3, {{0}, {1, 2}}));
    auto mp = reference_graph(t, Family::Pc, PcReference::Mpdag);
    CHECK(mp == chain);
}

TEST_CASE("algorithm names") {
    for (auto a : {Algorithm::Pc, Algorithm::ClusterPc, Algorithm::Fci, Algorithm::ClusterFci,
                   Algorithm::ClusterFciNonPag})
        CHECK(parse_algorithm(to_string(a)) == a);
    CHECK(family_of(Algorithm::ClusterPc) == Family::Pc);
    CHECK(family_of(Algorithm::ClusterFciNonPag) == Family::Fci);
    CHECK_THROWS(parse_algorithm("ges"));
}

TEST_CASE("study grids") {
    auto cells = [](const StudySpec& s) {
        return s.edges.size() * s.clusters.size() * s.alphas.size() * s.graph_methods.size() * s.noises.size();
    };
    auto sim1 = study_preset("sim1");
    CHECK(cells(sim1) * static_cast<std::size_t>(scaled_runs(sim1.runs, 1.0)) == 1750);
    CHECK(cells(sim1) * static_cast<std::size_t>(scaled_runs(sim1.runs, 0.1)) == 175);
    CHECK(scaled_runs(sim1.runs, 0.01) == 1);

    auto sim2 = study_preset("sim2");
    CHECK(cells(sim2) == 1080);
    auto sim3 = study_preset("sim3");
    CHECK(cells(sim3) * static_cast<std::size_t>(sim3.runs) == 180);
    CHECK(sim3.latents);
    auto sim4 = study_preset("sim4");
    CHECK(cells(sim4) * static_cast<std::size_t>(sim4.runs) == 45);
    CHECK(sim4.cluster_method == ClusterMethod::CdagFirst);

    CHECK_THROWS(study_preset("sim9"));
    CHECK_THROWS(scaled_runs(10, 0.0));
    CHECK_THROWS(scaled_runs(10, 1.5));
}

TEST_CASE("a small study") {
    auto spec = tiny_spec();
    auto r = run_study(spec, 1.0, 7);
    CHECK(r.skipped.empty());
    REQUIRE(r.rows.size() == 4 * 3 * 2);
    for (const auto& row : r.rows) {
        CHECK(row.study == "tiny");
        CHECK(row.runtime_ms == 0.0);
        CHECK(row.adj.f1 >= 0.0);
        CHECK(row.adj.f1 <= 1.0);
    }
    std::istringstream lines(csv(r));
    std::string header;
    std::getline(lines, header);
    CHECK(header == kResultsHeader);
    CHECK(header ==
          "study,config_id,seed,algorithm,n_nodes,n_edges,n_clusters,alpha,distribution,graph_method,adj_precision,"
          "adj_recall,adj_f1,arrow_precision,arrow_recall,arrow_f1,shd,ci_total,ci_unique,runtime_ms");

    auto one_cell = tiny_spec();
    one_cell.edges = {8};
    one_cell.clusters = {3};
    one_cell.runs = 1;
    auto single = run_study(one_cell, 1.0, 7);
    CHECK(single.rows.size() == 2);
    CHECK(aggregate(single, true).size() == 2);
}

TEST_CASE("study output does not depend on the thread count") {
    auto spec = tiny_spec();
    auto a = csv(run_study(spec, 1.0, 11, 1));
    auto b = csv(run_study(spec, 1.0, 11, 3));
    auto c = csv(run_study(spec, 1.0, 11, 1));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a != csv(run_study(spec, 1.0, 12, 1)));
}

TEST_CASE("reported CI counts match a separate run of each algorithm") {
    auto spec = tiny_spec();
    spec.runs = 1;
    auto r = run_study(spec, 1.0, 5);
    for (const auto& row : r.rows) {
        GenConfig cfg;
        cfg.n_nodes = spec.n_nodes;
        cfg.n_edges = row.n_edges;
        cfg.n_clusters = row.n_clusters;
        cfg.n_samples = spec.n_samples;
        cfg.seed = row.seed;
        auto gt = gen_ground_truth(cfg, false);
        FisherZTester t(correlation_matrix_serial(gt.dataset.samples), gt.dataset.num_samples(), row.alpha);
        auto out = row.algorithm == "pc" ? pc(t, gt.dataset.labels) : cluster_pc(t, gt.cluster_graph);
        CHECK(out.ci_stats.total_invocations == row.ci_total);
        CHECK(shd(out.graph, reference_graph(gt, Family::Pc)) == row.shd);
    }
}

TEST_CASE("aggregates are plain means") {
    auto r = run_study(tiny_spec(), 1.0, 3);
    for (const auto& a : aggregate(r, false)) {
        double sum = 0, shd_sum = 0;
        int n = 0;
        for (const auto& row : r.rows)
            if (row.algorithm == a.algorithm) {
                sum += static_cast<double>(row.ci_total);
                shd_sum += row.shd;
                ++n;
            }
        CHECK(a.instances == n);
        CHECK(a.ci_total == doctest::Approx(sum / n));
        CHECK(a.shd == doctest::Approx(shd_sum / n));
    }
    std::ostringstream summary;
    write_summary(summary, r);
    CHECK(summary.str().find("cpc") != std::string::npos);
}

TEST_CASE("oversized edge counts are clamped with a note") {
    auto spec = tiny_spec();
    spec.edges = {40};
    spec.clusters = {2};
    spec.runs = 1;
    auto r = run_study(spec, 1.0, 1);
    REQUIRE(r.notes.size() == 1);
    for (const auto& row : r.rows) CHECK(row.n_edges == 28);
}

TEST_CASE("FCI studies score against the oracle PAG") {
    StudySpec s;
    s.name = "lat";
    s.n_nodes = 9;
    s.edges = {9};
    s.clusters = {3};
    s.runs = 3;
    s.latents = true;
    s.oracle = true;
    s.algorithms = {Algorithm::Fci, Algorithm::ClusterFci, Algorithm::ClusterFciNonPag};
    auto r = run_study(s, 1.0, 2);
    CHECK(r.skipped.empty());
    REQUIRE(r.rows.size() == 9);
    for (const auto& row : r.rows)
        if (row.algorithm == "fci") {
            CHECK(row.shd == 0);
            CHECK(row.adj.f1 == doctest::Approx(row.adj.precision > 0 ? 1.0 : 0.0));
        }
}
