#include <doctest.h>

#include "ccd/cluster.hpp"
#include "ccd/separation.hpp"
#include "oracles/oracles.hpp"

#include <algorithm>

using namespace ccd;

namespace {

MixedGraph chain3() {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    return g;
}

ClusterGraph singleton_clusters(int r) { return ClusterGraph(ClusterPartition::singletons(r)); }

bool subset_of(const NodeSet& a, const NodeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("d-separation examples") {
    CHECK(d_separated(chain3(), 0, 2, {1}));

    MixedGraph v(3);
    v.add_directed(0, 1);
    v.add_directed(2, 1);
    CHECK(d_separated(v, 0, 2, {}));
    CHECK_FALSE(d_separated(v, 0, 2, {1}));

    MixedGraph t = chain3();
    t.add_directed(0, 2);
    CHECK_FALSE(d_separated(t, 0, 2, {1}));

    CHECK_THROWS_AS(d_separated(chain3(), SeparationQuery{{0}, {2}, {0}}), GraphError);
}

TEST_CASE("m-separation examples") {
    MixedGraph a(2);
    a.add_bidirected(0, 1);
    CHECK_FALSE(m_separated(a, 0, 1, {}));

    MixedGraph b(3);
    b.add_bidirected(0, 1);
    b.add_directed(1, 2);
    CHECK(m_separated(b, 0, 2, {1}));

    // 1 -> 0 together with 0 <-> 1 is impossible in one edge slot; the
    // inducing-path shape uses 0 <-> 1 <-> 2 with 1 -> 3 -> 0.
    MixedGraph c(4);
    c.add_bidirected(0, 1);
    c.add_bidirected(1, 2);
    c.add_directed(1, 3);
    c.add_directed(3, 0);
    for (const auto& s : oracle::subsets({1, 3})) CHECK_FALSE(m_separated(c, 0, 2, s));

    MixedGraph circ(2);
    circ.set_edge(0, 1, Mark::Circle, Mark::Arrow);
    CHECK_THROWS_AS(m_separated(circ, 0, 1, {}), GraphError);
}

TEST_CASE("reachability matches path enumeration") {
    Rng rng(21);
    for (int it = 0; it < 300; ++it) {
        int n = 3 + it % 4;
        MixedGraph g = it % 2 ? oracle::random_dag(n, 0.4, rng) : oracle::random_admg(n, 0.35, 0.25, rng);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                NodeSet rest;
                for (int v = 0; v < n; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (const auto& s : oracle::subsets(rest)) {
                    bool expected = oracle::separated_by_paths(g, x, y, s);
                    REQUIRE(m_separated(g, x, y, s) == expected);
                    if (g.all_directed()) REQUIRE(d_separated(g, x, y, s) == expected);
                }
            }
    }
}

TEST_CASE("set-valued queries") {
    MixedGraph g(4);
    g.add_directed(0, 2);
    g.add_directed(1, 2);
    g.add_directed(2, 3);
    CHECK(m_separated(g, SeparationQuery{{0, 1}, {3}, {2}}));
    CHECK_FALSE(m_separated(g, SeparationQuery{{0, 1}, {3}, {}}));
}

TEST_CASE("cluster d-separation") {
    auto gc = singleton_clusters(3);
    gc.add_directed(0, 1);
    gc.add_directed(1, 2);
    CHECK(cluster_d_separated(gc, {{0}, {2}, {1}}));
    CHECK_FALSE(cluster_d_separated(gc, {{0}, {2}, {}}));

    auto col = singleton_clusters(3);
    col.add_directed(0, 2);
    col.add_directed(1, 2);
    CHECK(cluster_d_separated(col, {{0}, {1}, {}}));
    CHECK_FALSE(cluster_d_separated(col, {{0}, {1}, {2}}));

    auto mixed = singleton_clusters(3);
    mixed.set_bidirected(0, 1);
    mixed.add_directed(1, 2);
    CHECK(cluster_d_separated(mixed, {{0}, {2}, {1}}));
    CHECK_FALSE(cluster_d_separated(mixed, {{0}, {1}, {}}));

    CHECK_THROWS(cluster_d_separated(mixed, {{0}, {7}, {}}));
}

TEST_CASE("cluster d-separation implies micro m-separation") {
    Rng rng(33);
    for (int it = 0; it < 60; ++it) {
        int n = 3 + it % 5;
        MixedGraph g = oracle::random_admg(n, 0.3, 0.15, rng);
        auto p = oracle::random_admissible_partition(g, rng);
        auto gc = build_cluster_graph(g, p);
        int r = gc.size();
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) {
                NodeSet rest;
                for (int c = 0; c < r; ++c)
                    if (c != a && c != b) rest.push_back(c);
                for (const auto& z : oracle::subsets(rest)) {
                    if (!cluster_d_separated(gc, {{a}, {b}, z})) continue;
                    NodeSet given;
                    for (int c : z) given.insert(given.end(), p.members(c).begin(), p.members(c).end());
                    std::sort(given.begin(), given.end());
                    CHECK(m_separated(g, SeparationQuery{p.members(a), p.members(b), given}));
                }
            }
    }
}

TEST_CASE("primitive inducing paths") {
    MixedGraph g(4);
    g.add_bidirected(0, 1);
    g.add_bidirected(1, 2);
    g.add_directed(1, 3);
    g.add_directed(3, 0);
    CHECK(primitive_inducing_path(g, 0, 2));

    CHECK_FALSE(primitive_inducing_path(chain3(), 0, 2));

    MixedGraph e(2);
    e.add_directed(0, 1);
    CHECK(primitive_inducing_path(e, 0, 1));

    MixedGraph lat(3);
    lat.add_directed(1, 0);
    lat.add_directed(1, 2);
    CHECK_FALSE(inducing_path(lat, 0, 2, {}));
    CHECK(inducing_path(lat, 0, 2, {1}));
}

TEST_CASE("possible-d-sep") {
    MixedGraph cc(3);
    cc.set_edge(0, 1, Mark::Circle, Mark::Circle);
    cc.set_edge(1, 2, Mark::Circle, Mark::Circle);
    CHECK(possible_d_sep(cc, 0, 2) == NodeSet{1});

    MixedGraph col(4);
    col.set_edge(0, 1, Mark::Circle, Mark::Arrow);
    col.set_edge(2, 1, Mark::Circle, Mark::Arrow);
    col.set_edge(2, 3, Mark::Circle, Mark::Arrow);
    auto pds = possible_d_sep(col, 0, 3);
    CHECK(subset_of({1, 2}, pds));

    CHECK(possible_d_sep(MixedGraph(3), 0, 2).empty());
    CHECK_THROWS_AS(possible_d_sep(cc, 1, 1), GraphError);
}

TEST_CASE("non-adjacent MAG pairs are separated inside possible-d-sep") {
    Rng rng(8);
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 4 + it % 4;
        MixedGraph g = oracle::random_admg(n, 0.35, 0.2, rng);
        auto r = classify(g);
        if (!r.is_ancestral || !*r.is_maximal) continue;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y || g.adjacent(x, y)) continue;
                auto pds = possible_d_sep(g, x, y);
                pds.erase(std::remove(pds.begin(), pds.end(), y), pds.end());
                bool found = false;
                for (const auto& s : oracle::subsets(pds)) found = found || m_separated(g, x, y, s);
                CHECK(found);
                ++checked;
            }
    }
    CHECK(checked > 100);
}

TEST_CASE("discriminating paths") {
    MixedGraph g(4);
    g.add_directed(0, 1);
    g.add_bidirected(1, 2);
    g.add_directed(1, 3);
    g.set_edge(2, 3, Mark::Circle, Mark::Circle);
    auto p = discriminating_path(g, 3, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2, 3});

    MixedGraph short_path(3);
    short_path.add_directed(0, 1);
    short_path.set_edge(1, 2, Mark::Circle, Mark::Circle);
    for (int s = 0; s < 3; ++s)
        for (int y = 0; y < 3; ++y)
            if (s != y) CHECK_FALSE(discriminating_path(short_path, y, s).has_value());

    CHECK_FALSE(discriminating_path(MixedGraph(5), 4, 3).has_value());
}

TEST_CASE("MAG Markov equivalence") {
    MixedGraph a(2), b(2);
    a.add_directed(0, 1);
    b.add_directed(1, 0);
    CHECK(mags_markov_equivalent(a, a));
    CHECK(mags_markov_equivalent(a, b));

    MixedGraph col(3), ch(3);
    col.add_directed(0, 1);
    col.add_directed(2, 1);
    ch.add_directed(0, 1);
    ch.add_directed(1, 2);
    CHECK_FALSE(mags_markov_equivalent(col, ch));

    // Same skeleton and unshielded colliders, told apart by a discriminating path.
    MixedGraph d1(4), d2(4);
    for (auto* g : {&d1, &d2}) {
        g->add_directed(0, 1);
        g->add_bidirected(1, 2);
        g->add_directed(1, 3);
    }
    d1.add_bidirected(2, 3);
    d2.add_directed(2, 3);
    REQUIRE(is_mag(d1));
    REQUIRE(is_mag(d2));
    CHECK_FALSE(mags_markov_equivalent(d1, d2));

    MixedGraph circ(2);
    circ.set_edge(0, 1, Mark::Circle, Mark::Circle);
    CHECK_THROWS_AS(mags_markov_equivalent(circ, a), GraphError);
}

TEST_CASE("Markov equivalence agrees with separation on small MAGs") {
    Rng rng(3);
    std::vector<MixedGraph> mags;
    while (mags.size() < 60) {
        MixedGraph g = oracle::random_admg(4, 0.4, 0.3, rng);
        if (is_mag(g)) mags.push_back(g);
    }
    auto same_independences = [](const MixedGraph& a, const MixedGraph& b) {
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
                NodeSet rest;
                for (int v = 0; v < 4; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (const auto& s : oracle::subsets(rest))
                    if (m_separated(a, x, y, s) != m_separated(b, x, y, s)) return false;
            }
        return true;
    };
    for (std::size_t i = 0; i < mags.size(); ++i)
        for (std::size_t j = i; j < mags.size(); ++j)
            CHECK(mags_markov_equivalent(mags[i], mags[j]) == same_independences(mags[i], mags[j]));
}

TEST_CASE("minimal neighbour separator") {
    CHECK(mns(chain3(), 2, 0) == NodeSet{1});

    MixedGraph e(3);
    e.add_directed(1, 2);
    CHECK(mns(e, 2, 0).empty());

    MixedGraph d(4);
    d.add_directed(0, 1);
    d.add_directed(0, 2);
    d.add_directed(1, 3);
    d.add_directed(2, 3);
    CHECK(mns(d, 3, 0) == NodeSet{1, 2});

    CHECK_THROWS_AS(mns(chain3(), 0, 2), GraphError);
    CHECK_THROWS_AS(mns(chain3(), 1, 2), GraphError);
}

TEST_CASE("mns is the unique minimal separator within the parents") {
    Rng rng(17);
    for (int it = 0; it < 200; ++it) {
        int n = 3 + it % 5;
        MixedGraph g = oracle::random_dag(n, 0.4, rng);
        for (int x = 0; x < n; ++x) {
            auto de = g.descendants(x);
            for (int a = 0; a < n; ++a) {
                if (a == x || g.adjacent(a, x) || std::binary_search(de.begin(), de.end(), a)) continue;
                auto s = mns(g, x, a);
                auto pa = g.parents(x);
                CHECK(subset_of(s, pa));
                CHECK(d_separated(g, a, x, s));
                for (const auto& t : oracle::subsets(s))
                    if (t.size() < s.size()) CHECK_FALSE(d_separated(g, a, x, t));
                NodeSet nb = g.adjacents(x);
                for (const auto& t : oracle::subsets(nb))
                    if (d_separated(g, a, x, t)) CHECK(subset_of(s, t));
            }
        }
    }
}
