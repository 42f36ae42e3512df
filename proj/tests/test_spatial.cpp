#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "udg/spatial.hpp"

using namespace udg;

TEST_CASE("grid construction") {
    PointInstance one({{0, 0}}, 10);
    GridIndex g1 = build_grid(one);
    CHECK(g1.cell_count() == 1);
    CHECK(g1.points_in({0, 0}).size() == 1);

    PointInstance two({{1, 1}, {9, 9}}, 10);
    GridIndex g2 = build_grid(two);
    CHECK(g2.cell_count() == 1);
    CHECK(g2.points_in({0, 0}).size() == 2);

    PointInstance far({{0, 0}, {30, 0}}, 10);
    GridIndex g3 = build_grid(far);
    CHECK(g3.cell_count() == 2);
    CHECK(g3.points_in({3, 0}) == std::vector<int>{1});
    // cells (0,0) and (3,0) are not in each other's 3x3 vicinity
    int seen = 0;
    g3.for_each_in_vicinity(CellCoord{0, 0}, [&](int) { ++seen; });
    CHECK(seen == 1);

    PointInstance negative({{-1, -1}}, 10);
    CHECK(build_grid(negative).points_in({-1, -1}).size() == 1);
}

TEST_CASE("adjacency is exact at the threshold") {
    PointInstance inst({{0, 0}, {1000, 0}, {1001, 0}}, 1000);
    Graph g = build_adjacency(inst);
    CHECK(g.has_edge(0, 1));        // distance exactly threshold
    CHECK_FALSE(g.has_edge(0, 2));  // squared distance threshold^2 + 2001
    CHECK(g.has_edge(1, 2));
    // squared distance threshold^2 + 1
    PointInstance offbyone({{0, 0}, {1000, 1}, {0, 1}}, 1000);
    Graph g2 = build_adjacency(offbyone);
    CHECK_FALSE(g2.has_edge(0, 1));
    CHECK(g2.has_edge(2, 1));
}

TEST_CASE("grid adjacency equals brute force on random instances") {
    SplitMix64 rng(123);
    for (int t = 0; t < 40; ++t) {
        PointInstance inst = testutil::random_instance(rng, 400);
        Graph fast = build_adjacency(inst);
        Graph slow = testutil::brute_adjacency(inst);
        REQUIRE(fast.n() == slow.n());
        CHECK(fast.m() == slow.m());
        for (int v = 0; v < fast.n(); ++v) CHECK(fast.neighbors(v) == slow.neighbors(v));
    }
}

TEST_CASE("fig4 reliever/witness adjacency is reproduced exactly") {
    PointInstance inst = paper_instance("fig4");
    Graph g = build_adjacency(inst);
    for (int w = 5; w <= 8; ++w) CHECK(g.has_edge(0, w));
    for (int c = 1; c <= 4; ++c) CHECK_FALSE(g.has_edge(0, c));
}

TEST_CASE("single-disk region") {
    Region r({{5, 7}}, 100);
    CHECK_FALSE(r.empty());
    CHECK(r.contains({5, 7}));
    CHECK(r.contains({105, 7}));        // boundary
    CHECK_FALSE(r.contains({106, 7}));  // just outside
}

TEST_CASE("two tangent disks degenerate to the midpoint") {
    Region r({{0, 0}, {2000, 0}}, 1000);
    CHECK_FALSE(r.empty());
    CHECK(r.contains({1000, 0}));
    CHECK_FALSE(r.contains({999, 0}));
    CHECK_FALSE(r.contains({1001, 0}));
    CHECK_FALSE(r.contains({1000, 1}));

    Region empty({{0, 0}, {2001, 0}}, 1000);
    CHECK(empty.empty());
    CHECK_FALSE(empty.contains({1000, 0}));
}

TEST_CASE("near-equilateral triangle region contains the centroid") {
    // side lengths verified exactly: all pairwise squared distances are
    // 999999300625 or 10^12 <= (10^6)^2
    std::vector<Point> tri{{0, 0}, {1000000, 0}, {500000, 866025}};
    const std::int64_t r = 1000000;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(squared_distance(tri[i], tri[j]) <=
                  static_cast<uint128>(r) * static_cast<uint128>(r));
    Region reg(tri, r);
    CHECK_FALSE(reg.empty());
    CHECK(reg.contains({500000, 288675}));  // centroid, distance ~ r/sqrt(3)
    CHECK(reg.contains({500000, 433012}));  // circumcenter-ish
    CHECK_FALSE(reg.contains({0, 866025}));
    CHECK(reg.arcs().size() == 3);
}

TEST_CASE("region membership equals the all-centers brute force") {
    SplitMix64 rng(77);
    long long positives = 0;
    for (int t = 0; t < 120; ++t) {
        const int k = 2 + static_cast<int>(rng.below(24));
        const std::int64_t r = 900 + static_cast<std::int64_t>(rng.below(200));
        std::vector<Point> centers;
        for (int i = 0; i < k; ++i) centers.push_back({rng.range(-r, r), rng.range(-r, r)});
        Region reg(centers, r);
        auto brute = [&](const Point& p) {
            for (const Point& c : centers)
                if (squared_distance(p, c) > static_cast<uint128>(r) * static_cast<uint128>(r))
                    return false;
            return true;
        };
        for (int q = 0; q < 150; ++q) {
            // mix of wide and centroid-biased queries so both sides are hit
            Point p = q % 2 == 0 ? Point{rng.range(-2 * r, 2 * r), rng.range(-2 * r, 2 * r)}
                                 : Point{rng.range(-r / 4, r / 4), rng.range(-r / 4, r / 4)};
            bool expect = brute(p);
            positives += expect;
            CHECK(reg.contains(p) == expect);
        }
        // exact tie queries on each circle
        for (const Point& c : centers) {
            Point p{c.x + r, c.y};
            CHECK(reg.contains(p) == brute(p));
        }
    }
    CHECK(positives > 0);
}

TEST_CASE("region handles duplicate centers") {
    Region reg({{0, 0}, {0, 0}, {500, 0}, {0, 0}}, 1000);
    CHECK(reg.contains({0, 0}));
    CHECK(reg.contains({500, 0}));
    CHECK_FALSE(reg.contains({-600, 0}));  // outside disk of (500,0)
    CHECK(region_contains(reg, {-500, 0}));
}

TEST_CASE("geometric maximal independent set") {
    // all points pairwise within threshold -> singleton
    PointInstance clique({{0, 0}, {10, 0}, {0, 10}, {7, 7}}, 100);
    CHECK(geometric_mis(clique).size() == 1);

    // lattice spaced 2*threshold -> everything selected
    std::vector<Point> lattice;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) lattice.push_back({200 * i, 200 * j});
    PointInstance sparse(lattice, 100);
    CHECK(geometric_mis(sparse).size() == 25);

    SplitMix64 rng(31);
    for (int t = 0; t < 60; ++t) {
        PointInstance inst = testutil::random_instance(rng, 300);
        Graph g = build_adjacency(inst);
        VertexSet d = geometric_mis(inst);
        CHECK(is_independent(g, d));
        CHECK(is_dominating(g, d));
        // maximality: adding any vertex breaks independence
        for (int v = 0; v < g.n(); ++v) {
            if (d.contains(v)) continue;
            bool touches = false;
            for (int u : g.neighbors(v))
                if (d.contains(u)) {
                    touches = true;
                    break;
                }
            CHECK(touches);
        }
        // order policy changes the set but not validity
        VertexSet d2 = geometric_mis(inst, OrderPolicy::seeded(t));
        CHECK(is_independent(g, d2));
        CHECK(is_dominating(g, d2));
    }
}
