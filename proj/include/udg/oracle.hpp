#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "udg/core.hpp"
#include "udg/errors.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

inline std::uint64_t default_oracle_budget() {
    if (const char* env = std::getenv("UDGDOM_ORACLE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 50'000'000ULL;
}

namespace detail {

struct NodeBudget {
    std::uint64_t left;
    void spend(const char* where) {
        if (left == 0) throw budget_error(std::string("search budget exhausted in ") + where);
        --left;
    }
};

// ---------------------------------------------------------------------------
// Exact maximum independent set on small vertex subsets (multi-word bitset).
// ---------------------------------------------------------------------------

class SubsetMis {
public:
    SubsetMis(const Graph& g, const std::vector<int>& ids, NodeBudget& budget)
        : budget_(budget) {
        const int k = static_cast<int>(ids.size());
        words_ = static_cast<std::size_t>((k + 63) / 64);
        adj_.assign(static_cast<std::size_t>(k) * words_, 0);
        std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
        for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = i;
        for (int i = 0; i < k; ++i) {
            for (int w : g.neighbors(ids[static_cast<std::size_t>(i)])) {
                int j = local[static_cast<std::size_t>(w)];
                if (j >= 0) set_bit(row(i), j);
            }
        }
        full_.assign(words_, 0);
        for (int i = 0; i < k; ++i) set_bit(full_.data(), i);
    }

    /// Maximum independent set size; stops early once `goal` is reached
    /// (goal <= 0 means exact maximum).
    int solve(int goal) {
        goal_ = goal;
        best_ = 0;
        std::vector<std::uint64_t> mask = full_;
        recurse(mask, 0);
        return best_;
    }

private:
    std::uint64_t* row(int i) { return adj_.data() + static_cast<std::size_t>(i) * words_; }

    static void set_bit(std::uint64_t* w, int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

    int popcount(const std::vector<std::uint64_t>& mask) const {
        int c = 0;
        for (std::uint64_t w : mask) c += __builtin_popcountll(w);
        return c;
    }

    void recurse(std::vector<std::uint64_t>& mask, int picked) {
        budget_.spend("max_independent_within");
        if (goal_ > 0 && best_ >= goal_) return;
        int remaining = popcount(mask);
        if (picked + remaining <= best_) return;
        if (remaining == 0) {
            best_ = std::max(best_, picked);
            return;
        }
        // Branch on the remaining vertex of maximum remaining degree.
        int v = -1, vdeg = -1;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = mask[w];
            while (bits) {
                int i = static_cast<int>(w * 64) + __builtin_ctzll(bits);
                bits &= bits - 1;
                int deg = 0;
                const std::uint64_t* r = adj_.data() + static_cast<std::size_t>(i) * words_;
                for (std::size_t q = 0; q < words_; ++q) deg += __builtin_popcountll(r[q] & mask[q]);
                if (deg > vdeg) {
                    vdeg = deg;
                    v = i;
                }
            }
        }
        std::vector<std::uint64_t> with = mask;
        const std::uint64_t* r = adj_.data() + static_cast<std::size_t>(v) * words_;
        for (std::size_t q = 0; q < words_; ++q) with[q] &= ~r[q];
        with[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
        recurse(with, picked + 1);
        std::vector<std::uint64_t> without = mask;
        without[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
        recurse(without, picked);
    }

    NodeBudget& budget_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint64_t> full_;
    int goal_ = 0;
    int best_ = 0;
};

// ---------------------------------------------------------------------------
// Branch and bound for (independent) dominating sets.
// ---------------------------------------------------------------------------

class DominationSearch {
public:
    DominationSearch(const Graph& g, bool independent, NodeBudget& budget)
        : g_(g), independent_(independent), budget_(budget) {
        const auto n = static_cast<std::size_t>(g.n());
        cover_count_.assign(n, 0);
        banned_.assign(n, 0);
        max_closed_degree_ = 1;
        for (int v = 0; v < g.n(); ++v)
            max_closed_degree_ = std::max(max_closed_degree_, g.degree(v) + 1);
    }

    /// A dominating set of size exactly <= k, if one exists.
    std::optional<std::vector<int>> find(int k) {
        chosen_.clear();
        undominated_ = g_.n();
        std::optional<std::vector<int>> result;
        if (search(k, result)) return result;
        return std::nullopt;
    }

private:
    bool search(int k_left, std::optional<std::vector<int>>& result) {
        budget_.spend(independent_ ? "exact_min_independent_dominating_set"
                                   : "exact_min_dominating_set");
        if (undominated_ == 0) {
            result = chosen_;
            return true;
        }
        if (k_left == 0) return false;
        if (static_cast<long long>(undominated_) >
            static_cast<long long>(k_left) * max_closed_degree_)
            return false;

        // Pick the undominated vertex with the fewest eligible dominators.
        int target = -1, target_count = INT32_MAX;
        for (int v = 0; v < g_.n(); ++v) {
            if (cover_count_[static_cast<std::size_t>(v)] > 0) continue;
            int count = banned_[static_cast<std::size_t>(v)] == 0 ? 1 : 0;
            for (int u : g_.neighbors(v))
                if (banned_[static_cast<std::size_t>(u)] == 0) ++count;
            if (count < target_count) {
                target_count = count;
                target = v;
                if (count <= 1) break;
            }
        }
        if (target_count == 0) return false;

        std::vector<int> candidates;
        candidates.reserve(static_cast<std::size_t>(target_count));
        if (banned_[static_cast<std::size_t>(target)] == 0) candidates.push_back(target);
        for (int u : g_.neighbors(target))
            if (banned_[static_cast<std::size_t>(u)] == 0) candidates.push_back(u);

        // Vertices already tried at this node are excluded from deeper
        // branches; every solution through them was just explored.
        std::vector<int> excluded;
        bool found = false;
        for (int c : candidates) {
            choose(c);
            found = search(k_left - 1, result);
            unchoose(c);
            if (found) break;
            banned_[static_cast<std::size_t>(c)] += 1;
            excluded.push_back(c);
        }
        for (int c : excluded) banned_[static_cast<std::size_t>(c)] -= 1;
        return found;
    }

    void choose(int c) {
        chosen_.push_back(c);
        bump(c, +1);
        if (independent_)
            for (int u : g_.neighbors(c)) banned_[static_cast<std::size_t>(u)] += 1;
    }

    void unchoose(int c) {
        chosen_.pop_back();
        bump(c, -1);
        if (independent_)
            for (int u : g_.neighbors(c)) banned_[static_cast<std::size_t>(u)] -= 1;
    }

    void bump(int c, int delta) {
        adjust(c, delta);
        for (int u : g_.neighbors(c)) adjust(u, delta);
    }

    void adjust(int v, int delta) {
        auto& count = cover_count_[static_cast<std::size_t>(v)];
        if (count == 0 && delta > 0) --undominated_;
        count += delta;
        if (count == 0 && delta < 0) ++undominated_;
    }

    const Graph& g_;
    bool independent_;
    NodeBudget& budget_;
    std::vector<int> cover_count_;
    std::vector<int> banned_;
    std::vector<int> chosen_;
    int undominated_ = 0;
    int max_closed_degree_ = 1;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact solvers
// ---------------------------------------------------------------------------

/// Minimum dominating set if its size is <= cap, otherwise nullopt. Iterative
/// deepening over the target size keeps desk-scale instances tractable.
inline std::optional<VertexSet> exact_min_dominating_set(
    const Graph& g, int cap, std::uint64_t budget = default_oracle_budget()) {
    if (cap < 1) throw input_error("oracle cap must be >= 1");
    if (g.n() == 0) return VertexSet(0);
    detail::NodeBudget nodes{budget};
    detail::DominationSearch search(g, /*independent=*/false, nodes);
    for (int k = 1; k <= cap; ++k) {
        if (auto ids = search.find(k)) {
            VertexSet s(g.n());
            for (int v : *ids) s.insert(v);
            if (!is_dominating(g, s)) throw invariant_error("oracle produced a non-dominating set");
            return s;
        }
    }
    return std::nullopt;
}

/// Minimum independent dominating set if its size is <= cap, else nullopt.
inline std::optional<VertexSet> exact_min_independent_dominating_set(
    const Graph& g, int cap, std::uint64_t budget = default_oracle_budget()) {
    if (cap < 1) throw input_error("oracle cap must be >= 1");
    if (g.n() == 0) return VertexSet(0);
    detail::NodeBudget nodes{budget};
    detail::DominationSearch search(g, /*independent=*/true, nodes);
    for (int k = 1; k <= cap; ++k) {
        if (auto ids = search.find(k)) {
            VertexSet s(g.n());
            for (int v : *ids) s.insert(v);
            if (!is_dominating(g, s) || !is_independent(g, s))
                throw invariant_error("oracle produced an invalid independent dominating set");
            return s;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structural checkers
// ---------------------------------------------------------------------------

/// Exact maximum independent set size within the induced subgraph on s.
inline int max_independent_within(const Graph& g, const VertexSet& s,
                                  std::uint64_t budget = default_oracle_budget()) {
    check_set_matches(g, s);
    if (s.size() > 64) throw budget_error("max_independent_within: set larger than 64 vertices");
    detail::NodeBudget nodes{budget};
    std::vector<int> ids = s.to_sorted_vector();
    if (ids.empty()) return 0;
    return detail::SubsetMis(g, ids, nodes).solve(0);
}

/// True iff some vertex has >= `leaves` pairwise non-adjacent neighbors,
/// i.e. the graph contains an induced K_{1,leaves}.
inline bool has_induced_star(const Graph& g, int leaves,
                             std::uint64_t budget = default_oracle_budget()) {
    if (leaves < 1) throw input_error("leaves must be >= 1");
    detail::NodeBudget nodes{budget};
    for (int v = 0; v < g.n(); ++v) {
        const auto& nbrs = g.neighbors(v);
        if (static_cast<int>(nbrs.size()) < leaves) continue;
        if (detail::SubsetMis(g, nbrs, nodes).solve(leaves) >= leaves) return true;
    }
    return false;
}

/// True iff the graph contains an induced K_{2,3}: a non-adjacent pair with
/// three pairwise non-adjacent common neighbors.
inline bool has_induced_k23(const Graph& g, std::uint64_t budget = default_oracle_budget()) {
    detail::NodeBudget nodes{budget};
    std::vector<int> common;
    for (int a = 0; a < g.n(); ++a) {
        for (int b = a + 1; b < g.n(); ++b) {
            if (g.has_edge(a, b)) continue;
            common.clear();
            const auto& na = g.neighbors(a);
            const auto& nb = g.neighbors(b);
            std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                  std::back_inserter(common));
            if (common.size() < 3) continue;
            if (detail::SubsetMis(g, common, nodes).solve(3) >= 3) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Packing bounds and fixed constants
// ---------------------------------------------------------------------------

/// floor(pi * (2r+1)^2 / sqrt(12)), the maximum number of independent
/// vertices in a closed r-neighborhood. Evaluated in 64.64 fixed point with
/// a proven slack of at least 1e-6 from integer boundaries, so the floor is
/// exact for r <= 10^6.
inline long long packing_bound(long long r) {
    if (r < 1) throw input_error("packing_bound requires r >= 1");
    if (r > 1'000'000) throw input_error("packing_bound certified only for r <= 10^6");
    // round(2^64 * pi / sqrt(12)); absolute error < 0.39 * 2^-64.
    constexpr std::uint64_t kPiOverSqrt12 = 16729346336542855295ULL;
    const uint128 k = static_cast<uint128>(2 * r + 1) * static_cast<uint128>(2 * r + 1);
    const uint128 scaled = k * static_cast<uint128>(kPiOverSqrt12);  // < 2^106
    const std::uint64_t frac = static_cast<std::uint64_t>(scaled);
    // ceil(1e-6 * 2^64): fractional parts closer than 1e-6 to an integer
    // would make the floor untrustworthy.
    constexpr std::uint64_t kMargin = 18446744073710ULL;
    if (frac < kMargin || frac > UINT64_MAX - kMargin)
        throw invariant_error("packing_bound: value within 1e-6 of an integer boundary");
    return static_cast<long long>(scaled >> 64);
}

/// (k, l) profile of a vertex: counts of degree-1 vertices in the open 1- and
/// 2-neighborhoods.
struct PendantProfile {
    int generator = 0;
    int k = 0;
    int l = 0;
};

inline PendantProfile pendant_profile(const Graph& g, int v) {
    g.check_vertex(v);
    PendantProfile profile;
    profile.generator = v;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n()), 0);
    seen[static_cast<std::size_t>(v)] = 1;
    std::vector<int> ring1;
    for (int u : g.neighbors(v)) {
        seen[static_cast<std::size_t>(u)] = 1;
        ring1.push_back(u);
        if (g.degree(u) == 1) ++profile.k;
    }
    for (int u : ring1)
        for (int w : g.neighbors(u)) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            if (g.degree(w) == 1) ++profile.l;
        }
    return profile;
}

/// The fixed constants the approximation analyses rest on.
struct LemmaConstants {
    long double semicircle_area;          // 3 + 17*pi/4
    long double hull_area;                // 7*sqrt(3)/2 + 43*pi/12
    long double semicircle_disk_bound;    // area * (pi/sqrt(12)) / (pi/4) < 19
    long double hull_disk_bound;          // < 20
    int clique_neighborhood_independence; // 12
    int max_cores_per_low_degree_reliever;// 14
    long double average_low_degree;       // (3 + 14*5)/15
    long double average_degree_four;      // (4 + 8*5)/9 = 44/9
};

inline LemmaConstants lemma_constants() {
    constexpr long double kPi = 3.141592653589793238462643383279502884L;
    constexpr long double kSqrt3 = 1.732050807568877293527446341505872367L;
    LemmaConstants c{};
    c.semicircle_area = 3.0L + 17.0L * kPi / 4.0L;
    c.hull_area = 7.0L * kSqrt3 / 2.0L + 43.0L * kPi / 12.0L;
    const long double density_per_disk = 2.0L / kSqrt3;  // (pi/sqrt(12)) / (pi/4)
    c.semicircle_disk_bound = c.semicircle_area * density_per_disk;
    c.hull_disk_bound = c.hull_area * density_per_disk;
    c.clique_neighborhood_independence = 12;
    c.max_cores_per_low_degree_reliever = 14;  // floor((73 - 3) / 5)
    c.average_low_degree = (1.0L * 3 + 14 * 5) / 15.0L;
    c.average_degree_four = (1.0L * 4 + 8 * 5) / 9.0L;
    return c;
}

}  // namespace udg
