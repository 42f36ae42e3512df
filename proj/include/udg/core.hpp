#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "udg/errors.hpp"
#include "udg/rng.hpp"

namespace udg {

using int128 = __int128;
using uint128 = unsigned __int128;

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Coordinates and thresholds are capped so that squared distances always fit
/// in 128-bit intermediates.
inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 60;

inline uint128 squared_distance(Point a, Point b) {
    int128 dx = int128{a.x} - int128{b.x};
    int128 dy = int128{a.y} - int128{b.y};
    return static_cast<uint128>(dx * dx) + static_cast<uint128>(dy * dy);
}

/// An integer point set plus an integer distance threshold: vertex i is the
/// i-th point, and two vertices are adjacent iff their squared Euclidean
/// distance is at most threshold^2. Duplicate points are allowed (they are
/// adjacent twins).
class PointInstance {
public:
    PointInstance(std::vector<Point> points, std::int64_t threshold)
        : points_(std::move(points)), threshold_(threshold) {
        if (threshold_ < 1 || threshold_ > kCoordLimit)
            throw input_error("threshold out of range: " + std::to_string(threshold_));
        for (const Point& p : points_) {
            if (p.x < -kCoordLimit || p.x > kCoordLimit || p.y < -kCoordLimit ||
                p.y > kCoordLimit)
                throw input_error("point coordinate exceeds the 2^60 overflow guard");
        }
    }

    int n() const { return static_cast<int>(points_.size()); }
    const Point& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    const std::vector<Point>& points() const { return points_; }
    std::int64_t threshold() const { return threshold_; }

    uint128 squared_threshold() const {
        return static_cast<uint128>(threshold_) * static_cast<uint128>(threshold_);
    }

    /// Exact closed adjacency test (distance <= threshold).
    bool adjacent(int i, int j) const {
        return squared_distance(point(i), point(j)) <= squared_threshold();
    }

    friend bool operator==(const PointInstance&, const PointInstance&) = default;

private:
    std::vector<Point> points_;
    std::int64_t threshold_;
};

/// Undirected simple graph as sorted adjacency lists. Construction guarantees
/// symmetry, no self-loops and no duplicate edges.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        if (n < 0) throw input_error("negative vertex count");
        Graph g;
        g.adj_.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges) {
            g.check_vertex(u);
            g.check_vertex(v);
            if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
            g.adj_[static_cast<std::size_t>(u)].push_back(v);
            g.adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        g.m_ = edges.size();
        for (auto& list : g.adj_) {
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw input_error("duplicate edge in edge list");
        }
        return g;
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t m() const { return m_; }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(int u, int v) const {
        const auto& list = neighbors(u);
        check_vertex(v);
        return std::binary_search(list.begin(), list.end(), v);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n())
            throw input_error("vertex id out of range: " + std::to_string(v));
    }

private:
    std::vector<std::vector<int>> adj_;
    std::size_t m_ = 0;
};

/// Set of vertex ids over a fixed universe [0, n) with O(1) membership.
class VertexSet {
public:
    explicit VertexSet(int universe_size)
        : in_(static_cast<std::size_t>(universe_size), 0) {
        if (universe_size < 0) throw input_error("negative universe size");
    }

    VertexSet(int universe_size, std::initializer_list<int> members)
        : VertexSet(universe_size) {
        for (int v : members) insert(v);
    }

    int universe_size() const { return static_cast<int>(in_.size()); }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int v) const {
        check(v);
        return in_[static_cast<std::size_t>(v)] != 0;
    }

    void insert(int v) {
        check(v);
        auto& slot = in_[static_cast<std::size_t>(v)];
        if (!slot) {
            slot = 1;
            ++count_;
        }
    }

    void erase(int v) {
        check(v);
        auto& slot = in_[static_cast<std::size_t>(v)];
        if (slot) {
            slot = 0;
            --count_;
        }
    }

    std::vector<int> to_sorted_vector() const {
        std::vector<int> out;
        out.reserve(count_);
        for (int v = 0; v < universe_size(); ++v)
            if (in_[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void check(int v) const {
        if (v < 0 || v >= universe_size())
            throw input_error("vertex id out of range: " + std::to_string(v));
    }

    std::vector<std::uint8_t> in_;
    std::size_t count_ = 0;
};

/// Tie-breaking rule for every "arbitrary" choice an algorithm makes.
/// Serializes to/from the CLI --order flag:
///   id                    ascending vertex id
///   seed:S                SplitMix64(S) shuffle of the ids
///   seed:S+late:a,b,...   as seed:S, then the listed ids moved to the end
class OrderPolicy {
public:
    static OrderPolicy by_id() { return OrderPolicy{}; }

    static OrderPolicy seeded(std::uint64_t seed) {
        OrderPolicy p;
        p.seeded_ = true;
        p.seed_ = seed;
        return p;
    }

    OrderPolicy demote(std::vector<int> late) const {
        OrderPolicy p = *this;
        p.late_ = std::move(late);
        std::sort(p.late_.begin(), p.late_.end());
        return p;
    }

    static OrderPolicy parse(const std::string& text) {
        std::string spec = text;
        std::vector<int> late;
        if (auto pos = spec.find("+late:"); pos != std::string::npos) {
            std::string list = spec.substr(pos + 6);
            spec = spec.substr(0, pos);
            std::size_t start = 0;
            while (start < list.size()) {
                std::size_t comma = list.find(',', start);
                if (comma == std::string::npos) comma = list.size();
                try {
                    late.push_back(std::stoi(list.substr(start, comma - start)));
                } catch (const std::exception&) {
                    throw input_error("bad order policy: " + text);
                }
                start = comma + 1;
            }
        }
        OrderPolicy p;
        if (spec == "id") {
            p = by_id();
        } else if (spec.rfind("seed:", 0) == 0) {
            try {
                p = seeded(std::stoull(spec.substr(5)));
            } catch (const std::exception&) {
                throw input_error("bad order policy: " + text);
            }
        } else {
            throw input_error("bad order policy: " + text);
        }
        return late.empty() ? p : p.demote(std::move(late));
    }

    std::string label() const {
        std::string out = seeded_ ? "seed:" + std::to_string(seed_) : "id";
        if (!late_.empty()) {
            out += "+late:";
            for (std::size_t i = 0; i < late_.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(late_[i]);
            }
        }
        return out;
    }

    /// The visit order over vertex ids [0, n).
    std::vector<int> permutation(int n) const {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        if (seeded_) {
            SplitMix64 rng(seed_);
            shuffle(perm, rng);
        }
        if (!late_.empty()) {
            std::stable_partition(perm.begin(), perm.end(), [&](int v) {
                return !std::binary_search(late_.begin(), late_.end(), v);
            });
        }
        return perm;
    }

    friend bool operator==(const OrderPolicy&, const OrderPolicy&) = default;

private:
    bool seeded_ = false;
    std::uint64_t seed_ = 0;
    std::vector<int> late_;
};

/// A vertex set claimed to be an independent dominating set, with provenance.
struct Solution {
    VertexSet set;
    std::string algorithm;
    int iterations = 0;
    std::string order_policy;
};

/// Five mutually non-adjacent solution vertices (petals) together with the
/// non-solution vertices adjacent to all five (cores).
struct Corona {
    std::array<int, 5> petals{};  // sorted ascending
    std::vector<int> cores;       // sorted ascending, nonempty

    bool has_petal(int v) const {
        return std::find(petals.begin(), petals.end(), v) != petals.end();
    }
};

inline void check_set_matches(const Graph& g, const VertexSet& s) {
    if (s.universe_size() != g.n())
        throw input_error("vertex set universe (" + std::to_string(s.universe_size()) +
                          ") does not match graph order (" + std::to_string(g.n()) + ")");
}

/// True iff every vertex is in s or adjacent to a member of s.
inline bool is_dominating(const Graph& g, const VertexSet& s) {
    check_set_matches(g, s);
    for (int v = 0; v < g.n(); ++v) {
        if (s.contains(v)) continue;
        bool covered = false;
        for (int u : g.neighbors(v)) {
            if (s.contains(u)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

/// True iff no edge joins two members of s.
inline bool is_independent(const Graph& g, const VertexSet& s) {
    check_set_matches(g, s);
    for (int v = 0; v < g.n(); ++v) {
        if (!s.contains(v)) continue;
        for (int u : g.neighbors(v))
            if (u > v && s.contains(u)) return false;
    }
    return true;
}

/// True iff the hop distance between u and v is at most d (BFS truncated at
/// depth d).
inline bool hop_distance_within(const Graph& g, int u, int v, int d) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) return true;
    if (d <= 0) return false;
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::deque<int> queue{u};
    dist[static_cast<std::size_t>(u)] = 0;
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        int dw = dist[static_cast<std::size_t>(w)];
        if (dw == d) break;
        for (int x : g.neighbors(w)) {
            if (dist[static_cast<std::size_t>(x)] != -1) continue;
            if (x == v) return true;
            dist[static_cast<std::size_t>(x)] = dw + 1;
            queue.push_back(x);
        }
    }
    return false;
}

}  // namespace udg
