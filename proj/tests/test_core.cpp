#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "udg/core.hpp"

using namespace udg;
using testutil::path;
using testutil::star;

TEST_CASE("is_dominating on stars and edgeless graphs") {
    Graph k15 = star(5);
    CHECK(is_dominating(k15, VertexSet(6, {0})));
    CHECK_FALSE(is_dominating(k15, VertexSet(6, {1})));

    Graph edgeless = Graph::from_edges(3, {});
    CHECK(is_dominating(edgeless, VertexSet(3, {0, 1, 2})));
    CHECK_FALSE(is_dominating(edgeless, VertexSet(3, {0, 1})));
}

TEST_CASE("is_independent") {
    Graph k15 = star(5);
    CHECK(is_independent(k15, VertexSet(6, {1, 2, 3, 4, 5})));
    CHECK(is_independent(k15, VertexSet(6)));
    Graph edge = Graph::from_edges(2, {{0, 1}});
    CHECK_FALSE(is_independent(edge, VertexSet(2, {0, 1})));
}

TEST_CASE("set/graph mismatch is an input error") {
    Graph k15 = star(5);
    CHECK_THROWS_AS(is_dominating(k15, VertexSet(4, {0})), input_error);
    CHECK_THROWS_AS(is_independent(k15, VertexSet(9)), input_error);
    CHECK_THROWS_AS(VertexSet(3, {3}), input_error);
    CHECK_THROWS_AS(VertexSet(3, {-1}), input_error);
}

TEST_CASE("hop_distance_within") {
    Graph p5 = path(5);
    CHECK(hop_distance_within(p5, 0, 0, 0));
    CHECK_FALSE(hop_distance_within(p5, 0, 4, 3));
    CHECK(hop_distance_within(p5, 0, 4, 4));
    CHECK(hop_distance_within(p5, 0, 4, 9));
    CHECK_FALSE(hop_distance_within(p5, 0, 1, 0));
    CHECK_THROWS_AS(hop_distance_within(p5, 0, 5, 1), input_error);
}

TEST_CASE("graph construction guarantees symmetry and sortedness") {
    Graph g = Graph::from_edges(4, {{2, 0}, {3, 1}, {0, 1}});
    for (int v = 0; v < g.n(); ++v) {
        const auto& nbrs = g.neighbors(v);
        CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
        for (int u : nbrs) {
            CHECK(g.has_edge(u, v));
            CHECK(g.has_edge(v, u));
            CHECK(u != v);
        }
    }
    CHECK(g.m() == 3);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), input_error);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), input_error);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), input_error);
}

TEST_CASE("vertex set agrees with a reference set under random mutation") {
    SplitMix64 rng(2024);
    const int n = 200;
    VertexSet s(n);
    std::set<int> ref;
    for (int step = 0; step < 5000; ++step) {
        int v = static_cast<int>(rng.below(n));
        switch (rng.below(3)) {
            case 0:
                s.insert(v);
                ref.insert(v);
                break;
            case 1:
                s.erase(v);
                ref.erase(v);
                break;
            default:
                CHECK(s.contains(v) == (ref.count(v) > 0));
        }
        CHECK(s.size() == ref.size());
    }
    auto sorted = s.to_sorted_vector();
    CHECK(std::vector<int>(ref.begin(), ref.end()) == sorted);
}

TEST_CASE("order policies: parsing, labels, permutations") {
    CHECK(OrderPolicy::by_id().permutation(4) == std::vector<int>{0, 1, 2, 3});
    CHECK(OrderPolicy::parse("id").label() == "id");
    CHECK(OrderPolicy::parse("seed:17").label() == "seed:17");
    CHECK(OrderPolicy::parse("seed:3+late:2,0").label() == "seed:3+late:0,2");
    CHECK_THROWS_AS(OrderPolicy::parse("bogus"), input_error);
    CHECK_THROWS_AS(OrderPolicy::parse("seed:x"), input_error);

    OrderPolicy seeded = OrderPolicy::seeded(99);
    auto p1 = seeded.permutation(50);
    auto p2 = seeded.permutation(50);
    CHECK(p1 == p2);
    std::vector<int> sorted = p1;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);

    auto demoted = seeded.demote({7, 3}).permutation(50);
    CHECK(((demoted[48] == 3 && demoted[49] == 7) || (demoted[48] == 7 && demoted[49] == 3)));
    // round trip through the label
    CHECK(OrderPolicy::parse(seeded.demote({7, 3}).label()).permutation(50) == demoted);
}

TEST_CASE("point instance validation and exact adjacency") {
    CHECK_THROWS_AS(PointInstance({{0, 0}}, 0), input_error);
    CHECK_THROWS_AS(PointInstance({{kCoordLimit + 1, 0}}, 5), input_error);
    PointInstance inst({{0, 0}, {3, 4}, {0, 0}}, 5);
    CHECK(inst.adjacent(0, 1));   // distance exactly 5
    CHECK(inst.adjacent(0, 2));   // duplicate points are adjacent twins
    PointInstance tight({{0, 0}, {3, 5}}, 5);
    CHECK_FALSE(tight.adjacent(0, 1));  // squared distance 34 > 25
}
