#include <stdexcept>
#include "doctest.h"

#include "qwgi/graph.hpp"
#include "qwgi/rng.hpp"

using namespace qwgi;

TEST_CASE("graph construction canonicalizes and validates")
{
    Graph g(3, {{2, 1}, {2, 3}});
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK(!g.has_edge(1, 3));
    CHECK(g.degree(2) == 2);
    CHECK(g.connected());

    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{1, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}}), std::invalid_argument);

    CHECK(!Graph(4, {{1, 2}, {3, 4}}).connected());
    CHECK(Graph::complete(4).edge_count() == 6);
    CHECK(Graph::cycle(5).edge_count() == 5);
    CHECK(Graph::path(4).edge_count() == 3);
}

TEST_CASE("permutation basics and composition convention")
{
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);

    Permutation pi({2, 3, 1});
    CHECK(pi(1) == 2);
    CHECK(compose(pi.inverse(), pi) == Permutation::identity(3));

    // (outer . inner)(v) = outer(inner(v))
    Permutation a({2, 1, 3}), b({1, 3, 2});
    CHECK(compose(a, b)(2) == a(b(2)));
    CHECK(compose(a, b)(1) == a(1)); // b fixes 1
}

TEST_CASE("apply_permutation on small graphs")
{
    CHECK(apply_permutation(Permutation::identity(3), Graph::complete(3)) == Graph::complete(3));

    // swap 1<->3 maps P3 {12,23} onto {32,21} = the same edge set
    Graph p3(3, {{1, 2}, {2, 3}});
    CHECK(apply_permutation(Permutation({3, 2, 1}), p3) == p3);

    // rotation 1->2,2->3,3->1 maps {1,2} to {2,3}
    Graph single(3, {{1, 2}});
    CHECK(apply_permutation(Permutation({2, 3, 1}), single) == Graph(3, {{2, 3}}));
}

TEST_CASE("cost_f examples")
{
    Graph p3(3, {{1, 2}, {2, 3}});
    GiInstance planted(p3, apply_permutation(Permutation({3, 2, 1}), p3), Permutation({3, 2, 1}));
    CHECK(cost_f(*planted.planted, planted) == 0);

    GiInstance diff(Graph(3, {{1, 2}, {2, 3}}), Graph(3, {{1, 3}, {2, 3}}));
    CHECK(cost_f(Permutation::identity(3), diff) == 2);

    GiInstance k3_empty(Graph::complete(3), Graph::empty(3));
    CHECK(cost_f(Permutation({2, 3, 1}), k3_empty) == 3);
}

TEST_CASE("brute_force_iso enumeration")
{
    GiInstance k2(Graph::complete(2), Graph::complete(2));
    CHECK(brute_force_iso(k2).size() == 2);

    Graph p3(3, {{1, 2}, {2, 3}});
    auto iso = brute_force_iso(GiInstance(p3, p3));
    REQUIRE(iso.size() == 2);
    CHECK(iso[0] == Permutation::identity(3));
    CHECK(iso[1] == Permutation({3, 2, 1}));

    CHECK(brute_force_iso(GiInstance(Graph::complete(3), Graph::empty(3))).empty());
    CHECK_THROWS_AS(brute_force_iso(GiInstance(Graph::empty(10), Graph::empty(10))),
                    std::invalid_argument);
}

TEST_CASE("automorphism counts")
{
    CHECK(automorphism_count(Graph::cycle(5)) == 10);
    CHECK(automorphism_count(Graph::complete(3)) == 6);

    const Graph asym(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {3, 6}});
    CHECK(automorphism_count(asym) == 1);
    CHECK(is_rigid(asym));
    CHECK(!is_rigid(Graph::cycle(5)));
}

TEST_CASE("random_instance edge range, connectivity and determinism")
{
    const GiInstance a = random_instance(6, 42);
    CHECK(a.g1.edge_count() == 12); // [2n, n(n-2)/2] = [12, 12]
    CHECK(a.g1.connected());
    REQUIRE(a.planted.has_value());
    CHECK(apply_permutation(*a.planted, a.g1) == a.g2);

    const GiInstance b = random_instance(6, 42);
    CHECK(a.g1 == b.g1);
    CHECK(a.g2 == b.g2);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const GiInstance inst = random_instance(10, seed);
        CHECK(inst.g1.edge_count() >= 20);
        CHECK(inst.g1.edge_count() <= 40);
        CHECK(inst.g1.connected());
    }

    // n=5: the printed range [10, 7] is empty
    CHECK_THROWS_WITH_AS(random_instance(5, 1), doctest::Contains("[10, 7]"),
                         std::invalid_argument);
    RandomInstanceOptions opts;
    opts.max_edges_override = 10;
    CHECK(random_instance(5, 1, opts).g1.edge_count() == 10);
}

TEST_CASE("check_srg on hand-built families")
{
    // Petersen graph: outer 5-cycle, inner pentagram, spokes.
    Graph petersen(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5},
                        {6, 8}, {8, 10}, {7, 10}, {7, 9}, {6, 9},
                        {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}});
    CHECK(check_srg(petersen, 3, 0, 1));
    CHECK(!check_srg(petersen, 3, 1, 1));
    CHECK(check_srg(Graph::cycle(5), 2, 0, 1));
    CHECK(!check_srg(Graph::path(4), 2, 0, 1));
}

TEST_CASE("srg_instances produces planted pairs")
{
    SrgFamily fam;
    fam.n = 5;
    fam.k = 2;
    fam.lambda = 0;
    fam.mu = 1;
    fam.members = {Graph::cycle(5)};
    const auto insts = srg_instances(fam, 3, 9);
    REQUIRE(insts.size() == 3);
    for (const auto& inst : insts) {
        REQUIRE(inst.planted.has_value());
        CHECK(cost_f(*inst.planted, inst) == 0);
    }
}
