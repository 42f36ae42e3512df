#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "udg/core.hpp"
#include "udg/instances.hpp"
#include "udg/rng.hpp"
#include "udg/spatial.hpp"

namespace testutil {

using namespace udg;

/// K_{1,q}: vertex 0 is the center, 1..q the leaves.
inline Graph star(int q) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= q; ++i) e.push_back({0, i});
    return Graph::from_edges(q + 1, e);
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph::from_edges(n, e);
}

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return Graph::from_edges(n, e);
}

/// O(n^2) reference adjacency.
inline Graph brute_adjacency(const PointInstance& inst) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < inst.n(); ++i)
        for (int j = i + 1; j < inst.n(); ++j)
            if (inst.adjacent(i, j)) edges.emplace_back(i, j);
    return Graph::from_edges(inst.n(), edges);
}

/// Random instance with roughly constant expected degree.
inline PointInstance random_instance(SplitMix64& rng, int max_n, std::int64_t threshold = 1000) {
    GeneratorConfig cfg;
    cfg.n = max_n <= 5 ? max_n : 5 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 4)));
    cfg.threshold = threshold;
    cfg.box_side =
        threshold * std::max<std::int64_t>(1, std::llround(std::sqrt(static_cast<double>(cfg.n))));
    cfg.seed = rng.next();
    return generate(cfg);
}

/// Minimum dominating set size by full subset enumeration (n <= 25).
inline int enumeration_min_dominating(const Graph& g) {
    const int n = g.n();
    std::vector<std::uint32_t> closed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        closed[static_cast<std::size_t>(v)] = 1u << v;
        for (int u : g.neighbors(v)) closed[static_cast<std::size_t>(v)] |= 1u << u;
    }
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    int best = n;
    for (std::uint32_t s = 1; s <= all; ++s) {
        if (__builtin_popcount(s) >= best) continue;
        std::uint32_t cover = 0;
        for (int v = 0; v < n; ++v)
            if (s >> v & 1) cover |= closed[static_cast<std::size_t>(v)];
        if (cover == all) best = __builtin_popcount(s);
    }
    return best;
}

/// Two coronas chained so that the second becomes weakly reducible only
/// after the first weak reduction inserts its witness.
/// ids: petals p1..p5 = 0..4, q1..q5 = 5..9, cores a = 10, b = 12,
/// witness x = 11 (of a), witnesses y1..y4 = 13..16 (of b); x-y4 is the link.
inline Graph chained_coronas() {
    std::vector<std::pair<int, int>> e;
    for (int p = 0; p <= 4; ++p) e.push_back({p, 10});
    for (int q = 5; q <= 9; ++q) e.push_back({q, 12});
    e.push_back({0, 11});
    for (int j = 0; j < 4; ++j) e.push_back({5 + j, 13 + j});
    e.push_back({11, 16});
    return Graph::from_edges(17, e);
}

}  // namespace testutil
