#include <doctest.h>

#include "ccd/graph.hpp"
#include "oracles/oracles.hpp"

#include <algorithm>
#include <sstream>

using namespace ccd;

TEST_CASE("set_edge encodes and replaces") {
    MixedGraph g(3);
    g.set_edge(0, 1, Mark::Tail, Mark::Arrow);
    CHECK(g.is_directed(0, 1));
    CHECK(g.kind(0, 1) == EdgeKind::Directed);
    CHECK(g.kind(1, 0) == EdgeKind::Reversed);

    g.set_edge(0, 1, Mark::Arrow, Mark::Arrow);
    CHECK(g.is_bidirected(0, 1));
    CHECK_FALSE(g.is_directed(0, 1));
    CHECK(g.num_edges() == 1);

    CHECK_THROWS_AS(g.set_edge(2, 2, Mark::Tail, Mark::Arrow), GraphError);
    CHECK_THROWS_AS(g.set_edge(0, 3, Mark::Tail, Mark::Arrow), GraphError);
}

TEST_CASE("every edge kind round-trips through the marks") {
    struct Case {
        Mark a, b;
        EdgeKind kind;
    };
    const Case cases[] = {
        {Mark::Tail, Mark::Arrow, EdgeKind::Directed},     {Mark::Arrow, Mark::Tail, EdgeKind::Reversed},
        {Mark::Arrow, Mark::Arrow, EdgeKind::Bidirected},  {Mark::Tail, Mark::Tail, EdgeKind::Undirected},
        {Mark::Circle, Mark::Circle, EdgeKind::CircleCircle}, {Mark::Circle, Mark::Arrow, EdgeKind::CircleArrow},
        {Mark::Arrow, Mark::Circle, EdgeKind::ArrowCircle},
    };
    for (const auto& c : cases) {
        MixedGraph g(2);
        g.set_edge(0, 1, c.a, c.b);
        CHECK(g.kind(0, 1) == c.kind);
        CHECK(g.mark_at(0, 1) == c.a);
        CHECK(g.mark_at(1, 0) == c.b);

        std::istringstream in(to_edge_list(g));
        CHECK(read_edge_list(in) == g);
    }
}

TEST_CASE("relational queries") {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.set_edge(2, 1, Mark::Circle, Mark::Arrow);
    CHECK(g.parents(1) == NodeSet{0, 2});
    CHECK(g.children(2) == NodeSet{1});

    MixedGraph b(2);
    b.add_bidirected(0, 1);
    CHECK(b.siblings(0) == NodeSet{1});
    CHECK(b.parents(0).empty());
    CHECK(b.non_children(0) == NodeSet{1});

    MixedGraph e(2);
    CHECK(e.adjacents(0).empty());
    CHECK_THROWS_AS(e.parents(5), GraphError);
}

TEST_CASE("non-children") {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.set_edge(1, 2, Mark::Circle, Mark::Circle);
    CHECK(g.non_children(1) == NodeSet{0, 2});

    MixedGraph h(2);
    h.add_directed(0, 1);
    CHECK(h.non_children(0).empty());
}

TEST_CASE("ancestors and descendants") {
    MixedGraph chain(3);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    CHECK(chain.ancestors(2) == NodeSet{0, 1, 2});
    CHECK(chain.descendants(0) == NodeSet{0, 1, 2});

    MixedGraph bi(2);
    bi.add_bidirected(0, 1);
    CHECK(bi.ancestors(1) == NodeSet{1});

    MixedGraph partial(2);
    partial.set_edge(0, 1, Mark::Circle, Mark::Arrow);
    auto an = partial.ancestors(1, true);
    CHECK(std::find(an.begin(), an.end(), 0) != an.end());
    CHECK(partial.ancestors(1) == NodeSet{1});
}

TEST_CASE("topological order") {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.add_directed(0, 2);
    g.add_directed(1, 2);
    CHECK(g.topological_order() == std::vector<int>{0, 1, 2});

    MixedGraph h(3);
    h.add_directed(0, 2);
    h.add_directed(1, 2);
    CHECK(h.topological_order() == std::vector<int>{0, 1, 2});

    MixedGraph r(3);
    r.add_directed(2, 0);
    r.add_directed(1, 0);
    CHECK(r.topological_order() == std::vector<int>{1, 2, 0});

    // Three nodes are needed for a cycle since pairs carry one edge.
    MixedGraph c(3);
    c.add_directed(0, 1);
    c.add_directed(1, 2);
    c.add_directed(2, 0);
    CHECK_THROWS_AS(c.topological_order(), GraphError);
}

TEST_CASE("classify") {
    MixedGraph g(3);
    g.add_bidirected(0, 1);
    g.add_directed(1, 2);
    g.add_directed(2, 0);
    auto r = classify(g);
    CHECK(r.has_almost_directed_cycle);
    CHECK_FALSE(r.is_ancestral);
    CHECK_FALSE(r.is_maximal.has_value());

    MixedGraph d(2);
    d.add_directed(0, 1);
    r = classify(d);
    CHECK(r.is_dag);
    CHECK(r.is_ancestral);
    CHECK(r.is_maximal == true);

    MixedGraph b(2);
    b.add_bidirected(0, 1);
    r = classify(b);
    CHECK(r.is_admg);
    CHECK_FALSE(r.is_dag);
    CHECK(r.is_ancestral);

    MixedGraph circ(2);
    circ.set_edge(0, 1, Mark::Circle, Mark::Circle);
    CHECK_THROWS_AS(is_maximal(circ), GraphError);
}

TEST_CASE("maximality agrees with exhaustive separation search") {
    Rng rng(5);
    int non_maximal = 0;
    for (int it = 0; it < 400; ++it) {
        int n = 3 + it % 4;
        MixedGraph g = oracle::random_admg(n, 0.35, 0.35, rng);
        auto r = classify(g);
        if (!r.is_ancestral) continue;
        bool expected = true;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                if (g.adjacent(x, y)) continue;
                NodeSet others;
                for (int v = 0; v < n; ++v)
                    if (v != x && v != y) others.push_back(v);
                bool found = false;
                for (const auto& s : oracle::subsets(others)) found = found || oracle::separated_by_paths(g, x, y, s);
                expected = expected && found;
            }
        CHECK(*r.is_maximal == expected);
        if (!expected) ++non_maximal;
    }
    CHECK(non_maximal > 0);
}

TEST_CASE("edge list parsing") {
    std::istringstream in(
        "# comment\n"
        "node Z\n"
        "A --> B\n"
        "B <-> C\n"
        "C --- D\n"
        "D o-o E\n"
        "E o-> A\n");
    auto g = read_edge_list(in);
    REQUIRE(g.size() == 6);
    auto id = [&](const char* s) { return *g.find_label(s); };
    CHECK(g.is_directed(id("A"), id("B")));
    CHECK(g.is_bidirected(id("B"), id("C")));
    CHECK(g.is_undirected(id("C"), id("D")));
    CHECK(g.kind(id("D"), id("E")) == EdgeKind::CircleCircle);
    CHECK(g.kind(id("E"), id("A")) == EdgeKind::CircleArrow);
    CHECK(g.adjacents(id("Z")).empty());

    std::istringstream bad("A ==> B\n");
    CHECK_THROWS(read_edge_list(bad));
}

TEST_CASE("random graph properties") {
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + it % 7;
        MixedGraph g = oracle::random_admg(n, 0.4, 0.2, rng);
        std::bernoulli_distribution coin(0.3);
        for (auto [a, b] : g.edges())
            if (coin(rng)) g.set_mark_at(a, b, Mark::Circle);
        for (int x = 0; x < n; ++x) {
            for (int y : g.parents(x)) {
                auto ch = g.children(y);
                CHECK(std::find(ch.begin(), ch.end(), x) != ch.end());
            }
            auto ch = g.children(x), nch = g.non_children(x), adj = g.adjacents(x);
            NodeSet merged;
            std::merge(ch.begin(), ch.end(), nch.begin(), nch.end(), std::back_inserter(merged));
            CHECK(merged == adj);
            NodeSet both;
            std::set_intersection(ch.begin(), ch.end(), nch.begin(), nch.end(), std::back_inserter(both));
            CHECK(both.empty());
        }
        MixedGraph dag = oracle::random_dag(n, 0.4, rng);
        auto order = dag.topological_order();
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i) CHECK(sorted[i] == i);
        for (auto [a, b] : dag.edges()) {
            if (dag.is_directed(a, b)) CHECK(pos[a] < pos[b]);
            else CHECK(pos[b] < pos[a]);
        }
        for (int x = 0; x < n; ++x) {
            auto an = dag.ancestors(x);
            CHECK(std::binary_search(an.begin(), an.end(), x));
            for (int y : an) {
                auto an_y = dag.ancestors(y);
                CHECK(std::includes(an.begin(), an.end(), an_y.begin(), an_y.end()));
                if (y != x) CHECK_FALSE(std::binary_search(an_y.begin(), an_y.end(), x));
            }
        }
    }
}
