#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "udg/core.hpp"
#include "udg/errors.hpp"
#include "udg/spatial.hpp"

namespace udg {

/// One local improvement: replace the corona's five petals by `core` (plus
/// the witness set, for weak reductions). Applying a valid plan keeps the
/// solution independent and dominating and shrinks it by 4 - |witnesses|.
struct ReductionPlan {
    int core = -1;
    Corona corona;
    std::vector<int> witnesses;  // empty for plain reductions, size <= 3 for weak
};

/// Greedy maximal independent set in policy order; a 5-approximation of the
/// minimum dominating set on unit disk graphs.
inline VertexSet maximal_independent_set(const Graph& g,
                                         const OrderPolicy& policy = OrderPolicy::by_id()) {
    VertexSet d(g.n());
    for (int v : policy.permutation(g.n())) {
        bool blocked = false;
        for (int u : g.neighbors(v)) {
            if (d.contains(u)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) d.insert(v);
    }
    return d;
}

namespace detail {

// Enumeration of coronas plus, per corona, the set S2 of vertices outside d
// whose solution neighbors all lie among the corona's petals. Cores are
// exactly the S2 members adjacent to all five petals.
struct CoronaContext {
    std::vector<Corona> coronas;
    std::vector<std::vector<int>> s2;  // ascending ids, includes the cores
};

template <typename SolutionNeighbors>
CoronaContext build_corona_context(int n, const VertexSet& d, SolutionNeighbors&& nd_of) {
    CoronaContext ctx;
    std::vector<std::array<int, 5>> nd(static_cast<std::size_t>(n));
    std::vector<int> nd_size(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> by_min_petal(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> coronas_of_petal(static_cast<std::size_t>(n));

    for (int v = 0; v < n; ++v) {
        if (d.contains(v)) continue;
        int count = 0;
        nd_of(v, [&](int u) {
            if (count >= 5)
                throw invariant_error("vertex " + std::to_string(v) +
                                      " has 6 or more solution neighbors (induced K_{1,6}; "
                                      "input is not a unit disk graph)");
            nd[static_cast<std::size_t>(v)][static_cast<std::size_t>(count++)] = u;
        });
        nd_size[static_cast<std::size_t>(v)] = count;
        if (count != 5) continue;
        auto& petals = nd[static_cast<std::size_t>(v)];
        std::sort(petals.begin(), petals.end());
        // Dedup keyed by the minimum petal; a vertex sits in O(1) coronas.
        auto& bucket = by_min_petal[static_cast<std::size_t>(petals[0])];
        int idx = -1;
        for (int c : bucket) {
            if (ctx.coronas[static_cast<std::size_t>(c)].petals == petals) {
                idx = c;
                break;
            }
        }
        if (idx < 0) {
            idx = static_cast<int>(ctx.coronas.size());
            ctx.coronas.push_back(Corona{petals, {}});
            bucket.push_back(idx);
            for (int p : petals) coronas_of_petal[static_cast<std::size_t>(p)].push_back(idx);
        }
        ctx.coronas[static_cast<std::size_t>(idx)].cores.push_back(v);  // ascending by scan order
    }

    ctx.s2.assign(ctx.coronas.size(), {});
    for (int w = 0; w < n; ++w) {
        if (d.contains(w) || nd_size[static_cast<std::size_t>(w)] == 0) continue;
        const auto& mine = nd[static_cast<std::size_t>(w)];
        const int k = nd_size[static_cast<std::size_t>(w)];
        for (int c : coronas_of_petal[static_cast<std::size_t>(mine[0])]) {
            const auto& petals = ctx.coronas[static_cast<std::size_t>(c)].petals;
            bool subset = true;
            for (int i = 0; i < k && subset; ++i)
                subset = std::find(petals.begin(), petals.end(), mine[static_cast<std::size_t>(i)]) !=
                         petals.end();
            if (subset) ctx.s2[static_cast<std::size_t>(c)].push_back(w);
        }
    }
    return ctx;
}

inline CoronaContext build_corona_context(const Graph& g, const VertexSet& d) {
    return build_corona_context(g.n(), d, [&](int v, auto&& sink) {
        for (int u : g.neighbors(v))
            if (d.contains(u)) sink(u);
    });
}

// Epoch-stamped scratch space shared across corona evaluations.
struct Workspace {
    explicit Workspace(int n)
        : count(static_cast<std::size_t>(n), 0),
          stamp(static_cast<std::size_t>(n), 0),
          dist(static_cast<std::size_t>(n), 0),
          dist_stamp(static_cast<std::size_t>(n), 0) {}

    std::vector<int> count, stamp;
    std::vector<int> dist, dist_stamp;
    int epoch = 0;
    int bfs_epoch = 0;
    std::vector<int> queue;
};

/// Minimum-id vertex adjacent (closed) to every member of S2 and every petal,
/// or nullopt. Absence certifies that every core of the corona has a witness.
inline std::optional<int> reduction_core_from_s2(const Graph& g, const Corona& corona,
                                                 const std::vector<int>& s2, Workspace& ws) {
    const int e = ++ws.epoch;
    int members = 0;
    auto tally = [&](int x) {
        auto visit = [&](int y) {
            auto yi = static_cast<std::size_t>(y);
            if (ws.stamp[yi] != e) {
                ws.stamp[yi] = e;
                ws.count[yi] = 0;
            }
            ++ws.count[yi];
        };
        visit(x);
        for (int y : g.neighbors(x)) visit(y);
        ++members;
    };
    for (int x : s2) tally(x);
    for (int p : corona.petals) tally(p);

    int best = -1;
    auto consider = [&](int y) {
        auto yi = static_cast<std::size_t>(y);
        if (ws.stamp[yi] == e && ws.count[yi] == members && (best < 0 || y < best)) best = y;
    };
    // Any qualifying vertex lies in the closed neighborhood of the first petal.
    const int p0 = corona.petals[0];
    consider(p0);
    for (int y : g.neighbors(p0)) consider(y);
    if (best < 0) return std::nullopt;
    return best;
}

/// S2 of a corona computed from scratch (union of the petals' open
/// neighborhoods, filtered to vertices dominated only by petals).
inline std::vector<int> corona_s2(const Graph& g, const VertexSet& d, const Corona& corona,
                                  Workspace& ws) {
    const int e = ++ws.epoch;
    std::vector<int> s1;
    for (int p : corona.petals) {
        for (int w : g.neighbors(p)) {
            auto wi = static_cast<std::size_t>(w);
            if (ws.stamp[wi] != e) {
                ws.stamp[wi] = e;
                s1.push_back(w);
            }
        }
    }
    std::vector<int> s2;
    for (int w : s1) {
        if (d.contains(w)) continue;
        bool only_petals = true;
        for (int u : g.neighbors(w)) {
            if (d.contains(u) && !corona.has_petal(u)) {
                only_petals = false;
                break;
            }
        }
        if (only_petals) s2.push_back(w);
    }
    std::sort(s2.begin(), s2.end());
    return s2;
}

/// Greedy maximal independent subset of `candidates` (policy order), aborting
/// once 4 members exist. Returns nullopt on abort.
inline std::optional<std::vector<int>> greedy_witnesses(const Graph& g,
                                                        std::vector<int> candidates,
                                                        const std::vector<int>& rank) {
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
    });
    std::vector<int> picked;
    for (int w : candidates) {
        bool clash = false;
        for (int x : picked) {
            if (g.has_edge(w, x)) {
                clash = true;
                break;
            }
        }
        if (clash) continue;
        picked.push_back(w);
        if (picked.size() > 3) return std::nullopt;  // overwhelmed core
    }
    return picked;
}

inline std::optional<ReductionPlan> weak_plan_from_s2(const Graph& g, const Corona& corona,
                                                      const std::vector<int>& s2,
                                                      const std::vector<int>& rank) {
    for (int core : corona.cores) {  // ascending id
        std::vector<int> candidates;
        candidates.reserve(s2.size());
        for (int w : s2)
            if (w != core && !g.has_edge(core, w)) candidates.push_back(w);
        if (auto witnesses = greedy_witnesses(g, std::move(candidates), rank))
            return ReductionPlan{core, corona, std::move(*witnesses)};
    }
    return std::nullopt;
}

/// Marks all vertices within hop distance `radius` of source.
inline void mark_ball(const Graph& g, int source, int radius, Workspace& ws) {
    const int e = ws.bfs_epoch;
    ws.queue.clear();
    ws.queue.push_back(source);
    ws.dist_stamp[static_cast<std::size_t>(source)] = e;
    ws.dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
        int v = ws.queue[head];
        int dv = ws.dist[static_cast<std::size_t>(v)];
        if (dv == radius) continue;
        for (int u : g.neighbors(v)) {
            auto ui = static_cast<std::size_t>(u);
            if (ws.dist_stamp[ui] == e) continue;
            ws.dist_stamp[ui] = e;
            ws.dist[ui] = dv + 1;
            ws.queue.push_back(u);
        }
    }
}

inline std::vector<ReductionPlan> spread_plans(const Graph& g, std::vector<ReductionPlan> plans,
                                               int min_hop, Workspace& ws) {
    std::sort(plans.begin(), plans.end(),
              [](const ReductionPlan& a, const ReductionPlan& b) { return a.core < b.core; });
    ++ws.bfs_epoch;
    std::vector<ReductionPlan> selected;
    for (ReductionPlan& plan : plans) {
        auto ci = static_cast<std::size_t>(plan.core);
        if (ws.dist_stamp[ci] == ws.bfs_epoch) continue;  // within min_hop-1 of a pick
        mark_ball(g, plan.core, min_hop - 1, ws);
        selected.push_back(std::move(plan));
    }
    return selected;
}

}  // namespace detail

/// All coronas of the solution d: distinct 5-petal sets with their core
/// lists. Raises invariant_error if some vertex has >= 6 solution neighbors.
inline std::vector<Corona> enumerate_coronas(const Graph& g, const VertexSet& d) {
    check_set_matches(g, d);
    return detail::build_corona_context(g, d).coronas;
}

/// Minimum-id vertex whose closed neighborhood covers S2 and all petals
/// (steps (3a)-(3d) of the plain reduction search), or nullopt when every
/// core of the corona has a witness.
inline std::optional<int> find_reduction_core(const Graph& g, const VertexSet& d,
                                              const Corona& corona) {
    check_set_matches(g, d);
    detail::Workspace ws(g.n());
    std::vector<int> s2 = detail::corona_s2(g, d, corona, ws);
    return detail::reduction_core_from_s2(g, corona, s2, ws);
}

/// Maximal sublist of plans, greedy by ascending core id, whose cores are
/// pairwise at hop distance >= min_hop.
inline std::vector<ReductionPlan> select_spread_cores(const Graph& g,
                                                      std::vector<ReductionPlan> plans,
                                                      int min_hop = 5) {
    detail::Workspace ws(g.n());
    return detail::spread_plans(g, std::move(plans), min_hop, ws);
}

/// Weak-reduction plan for the corona: the first core (ascending id) whose
/// greedy witness set has at most 3 members, or nullopt when every core is
/// overwhelmed.
inline std::optional<ReductionPlan> find_weak_reduction(
    const Graph& g, const VertexSet& d, const Corona& corona,
    const OrderPolicy& policy = OrderPolicy::by_id()) {
    check_set_matches(g, d);
    detail::Workspace ws(g.n());
    std::vector<int> s2 = detail::corona_s2(g, d, corona, ws);
    std::vector<int> perm = policy.permutation(g.n());
    std::vector<int> rank(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    return detail::weak_plan_from_s2(g, corona, s2, rank);
}

namespace detail {

inline void check_solution_invariants(const Graph& g, const VertexSet& d, const char* where) {
    if (!is_independent(g, d))
        throw invariant_error(std::string(where) + ": intermediate set is not independent");
    if (!is_dominating(g, d))
        throw invariant_error(std::string(where) + ": intermediate set is not dominating");
}

/// Re-validates a plan against the current solution right before applying it;
/// a batch member can go stale through an earlier application in the same
/// batch (witness-witness adjacency between plans at core distance exactly 5).
inline bool plan_still_valid(const Graph& g, const VertexSet& d, const ReductionPlan& plan) {
    for (int p : plan.corona.petals)
        if (!d.contains(p)) return false;
    // Core must still see exactly the petals inside d.
    int nd = 0;
    for (int u : g.neighbors(plan.core)) {
        if (!d.contains(u)) continue;
        if (!plan.corona.has_petal(u)) return false;
        ++nd;
    }
    if (nd != 5) return false;
    for (std::size_t i = 0; i < plan.witnesses.size(); ++i) {
        int w = plan.witnesses[i];
        if (d.contains(w) || g.has_edge(plan.core, w)) return false;
        for (int u : g.neighbors(w))
            if (d.contains(u) && !plan.corona.has_petal(u)) return false;
        for (std::size_t j = i + 1; j < plan.witnesses.size(); ++j)
            if (g.has_edge(w, plan.witnesses[j])) return false;
    }
    return true;
}

inline int apply_plans(const Graph& g, VertexSet& d, const std::vector<ReductionPlan>& plans) {
    int applied = 0;
    for (const ReductionPlan& plan : plans) {
        if (!plan_still_valid(g, d, plan)) continue;
        for (int p : plan.corona.petals) d.erase(p);
        d.insert(plan.core);
        for (int w : plan.witnesses) d.insert(w);
        ++applied;
    }
    return applied;
}

}  // namespace detail

/// Graph-based 44/9-approximation: start from a greedy maximal independent
/// set and reduce coronas until none is reducible.
inline Solution reduce44_graph(const Graph& g, const OrderPolicy& policy = OrderPolicy::by_id()) {
    VertexSet d = maximal_independent_set(g, policy);
    detail::Workspace ws(g.n());
    int iterations = 0;
    while (true) {
        ++iterations;
        if (iterations > g.n() + 1)
            throw invariant_error("reduce44: iteration cap exceeded (termination bound violated)");
        auto ctx = detail::build_corona_context(g, d);
        std::vector<ReductionPlan> plans;
        for (std::size_t c = 0; c < ctx.coronas.size(); ++c) {
            if (auto core = detail::reduction_core_from_s2(g, ctx.coronas[c], ctx.s2[c], ws))
                plans.push_back(ReductionPlan{*core, ctx.coronas[c], {}});
        }
        if (plans.empty()) break;  // no reducible corona left
        auto batch = detail::spread_plans(g, std::move(plans), 5, ws);
        if (detail::apply_plans(g, d, batch) == 0)
            throw invariant_error("reduce44: no applicable plan in a nonempty batch");
        detail::check_solution_invariants(g, d, "reduce44");
    }
    return Solution{std::move(d), "reduce44", iterations, policy.label()};
}

/// Graph-based 43/9-approximation: like reduce44 but coronas whose cores are
/// not overwhelmed are weakly reduced (core plus at most 3 witnesses).
inline Solution weak43(const Graph& g, const OrderPolicy& policy = OrderPolicy::by_id()) {
    VertexSet d = maximal_independent_set(g, policy);
    detail::Workspace ws(g.n());
    std::vector<int> perm = policy.permutation(g.n());
    std::vector<int> rank(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    int iterations = 0;
    while (true) {
        ++iterations;
        if (iterations > g.n() + 1)
            throw invariant_error("weak43: iteration cap exceeded (termination bound violated)");
        auto ctx = detail::build_corona_context(g, d);
        std::vector<ReductionPlan> plans;
        for (std::size_t c = 0; c < ctx.coronas.size(); ++c) {
            if (auto plan = detail::weak_plan_from_s2(g, ctx.coronas[c], ctx.s2[c], rank))
                plans.push_back(std::move(*plan));
        }
        if (plans.empty()) break;  // only overwhelmed cores remain
        auto batch = detail::spread_plans(g, std::move(plans), 5, ws);
        if (detail::apply_plans(g, d, batch) == 0)
            throw invariant_error("weak43: no applicable plan in a nonempty batch");
        detail::check_solution_invariants(g, d, "weak43");
    }
    return Solution{std::move(d), "weak43", iterations, policy.label()};
}

// ---------------------------------------------------------------------------
// Geometric 44/9-approximation
// ---------------------------------------------------------------------------

namespace detail {

/// Solution members bucketed by dense grid cell id; an independent set has
/// at most 4 members per cell, so fixed-capacity slots suffice (with a small
/// safety margin for sets that are only being validated).
class SolutionCells {
public:
    SolutionCells(const PointInstance& inst, const GridIndex& grid, const VertexSet& d)
        : inst_(inst), grid_(grid),
          slots_(static_cast<std::size_t>(grid.cell_count())) {
        for (int v = 0; v < inst.n(); ++v)
            if (d.contains(v)) insert(v);
    }

    void insert(int v) {
        auto& slot = slots_[static_cast<std::size_t>(grid_.cell_id_of_point(v))];
        if (slot.count == kCapacity)
            throw invariant_error("more than " + std::to_string(kCapacity) +
                                  " solution members in one grid cell");
        slot.ids[static_cast<std::size_t>(slot.count++)] = v;
    }

    void erase(int v) {
        auto& slot = slots_[static_cast<std::size_t>(grid_.cell_id_of_point(v))];
        for (int i = 0; i < slot.count; ++i) {
            if (slot.ids[static_cast<std::size_t>(i)] == v) {
                slot.ids[static_cast<std::size_t>(i)] = slot.ids[static_cast<std::size_t>(--slot.count)];
                return;
            }
        }
    }

    /// Solution neighbors of point p (exact distance check), ascending id.
    template <typename Fn>
    void for_each_solution_neighbor(int p, Fn&& fn) const {
        const uint128 thr2 = inst_.squared_threshold();
        std::array<int, 9 * kCapacity> found{};
        int count = 0;
        for (int cell : grid_.vicinity_of_cell(grid_.cell_id_of_point(p))) {
            if (cell < 0) break;
            const auto& slot = slots_[static_cast<std::size_t>(cell)];
            for (int i = 0; i < slot.count; ++i) {
                int u = slot.ids[static_cast<std::size_t>(i)];
                if (u != p && squared_distance(inst_.point(p), inst_.point(u)) <= thr2)
                    found[static_cast<std::size_t>(count++)] = u;
            }
        }
        std::sort(found.begin(), found.begin() + count);
        for (int i = 0; i < count; ++i) fn(found[static_cast<std::size_t>(i)]);
    }

private:
    static constexpr int kCapacity = 8;
    struct Slot {
        std::array<int, kCapacity> ids{};
        int count = 0;
    };

    const PointInstance& inst_;
    const GridIndex& grid_;
    std::vector<Slot> slots_;
};

/// Cells within Euclidean distance 4 thresholds: compares the minimum
/// distance between the two square cells against 4 cell sides.
inline bool cells_within_four(const CellCoord& a, const CellCoord& b) {
    auto gap = [](std::int64_t d) { return std::max<std::int64_t>(std::llabs(d) - 1, 0); };
    const std::int64_t gx = gap(a.cx - b.cx), gy = gap(a.cy - b.cy);
    return gx * gx + gy * gy <= 16;
}

inline void geometric_check_invariants(const PointInstance& inst, const VertexSet& d,
                                       const SolutionCells& cells) {
    for (int v = 0; v < inst.n(); ++v) {
        bool dominated = d.contains(v);
        cells.for_each_solution_neighbor(v, [&](int) {
            dominated = true;
            if (d.contains(v))
                throw invariant_error("geo44: intermediate set is not independent");
        });
        if (!dominated) throw invariant_error("geo44: intermediate set is not dominating");
    }
}

}  // namespace detail

/// Geometric 44/9-approximation: grid-based maximal independent set, then
/// corona reductions with candidate cores filtered through the common
/// disk-intersection region and confirmed by exact integer distance checks.
inline Solution reduce44_geometric(const PointInstance& inst,
                                   const OrderPolicy& policy = OrderPolicy::by_id()) {
    const GridIndex grid = build_grid(inst);
    VertexSet d = geometric_mis(inst, grid, policy);
    const uint128 thr2 = inst.squared_threshold();
    int iterations = 0;
    while (true) {
        ++iterations;
        if (iterations > inst.n() + 1)
            throw invariant_error("geo44: iteration cap exceeded (termination bound violated)");
        detail::SolutionCells cells(inst, grid, d);
        auto ctx = detail::build_corona_context(inst.n(), d, [&](int v, auto&& sink) {
            cells.for_each_solution_neighbor(v, sink);
        });

        std::vector<ReductionPlan> plans;
        for (std::size_t c = 0; c < ctx.coronas.size(); ++c) {
            const Corona& corona = ctx.coronas[c];
            // S3 = S2 union petals; a reduction core is a member of S3
            // adjacent to all of S3, i.e. inside the intersection of the
            // unit disks around S3.
            std::vector<int> s3 = ctx.s2[c];
            s3.insert(s3.end(), corona.petals.begin(), corona.petals.end());
            std::sort(s3.begin(), s3.end());
            std::vector<Point> centers;
            centers.reserve(s3.size());
            for (int v : s3) centers.push_back(inst.point(v));
            Region region(centers, inst.threshold());
            for (int v : s3) {
                if (!region.contains(inst.point(v))) continue;
                // Exact confirmation of the region filter.
                bool adjacent_to_all = true;
                for (int u : s3)
                    if (squared_distance(inst.point(v), inst.point(u)) > thr2) {
                        adjacent_to_all = false;
                        break;
                    }
                if (!adjacent_to_all) continue;
                plans.push_back(ReductionPlan{v, corona, {}});
                break;  // minimum-id core: s3 is ascending
            }
        }
        if (plans.empty()) break;

        // Spread filter: accept cores in ascending id order, skipping any
        // whose cell is within Euclidean distance 4 of an accepted core's
        // cell.
        std::sort(plans.begin(), plans.end(),
                  [](const ReductionPlan& a, const ReductionPlan& b) { return a.core < b.core; });
        std::unordered_set<CellCoord, CellCoordHash> taken_cells;
        int applied = 0;
        for (const ReductionPlan& plan : plans) {
            const CellCoord pc = grid.cell_of_point_id(plan.core);
            bool blocked = false;
            for (std::int64_t dx = -5; dx <= 5 && !blocked; ++dx)
                for (std::int64_t dy = -5; dy <= 5 && !blocked; ++dy) {
                    CellCoord other{pc.cx + dx, pc.cy + dy};
                    if (taken_cells.count(other) && detail::cells_within_four(pc, other))
                        blocked = true;
                }
            if (blocked) continue;
            // Re-validate against the current solution (same rule as the
            // graph algorithm).
            bool valid = true;
            for (int p : plan.corona.petals)
                if (!d.contains(p)) valid = false;
            if (valid) {
                int nd = 0;
                cells.for_each_solution_neighbor(plan.core, [&](int u) {
                    if (!plan.corona.has_petal(u)) valid = false;
                    ++nd;
                });
                if (nd != 5) valid = false;
            }
            if (!valid) continue;
            taken_cells.insert(pc);
            for (int p : plan.corona.petals) {
                d.erase(p);
                cells.erase(p);
            }
            d.insert(plan.core);
            cells.insert(plan.core);
            ++applied;
        }
        if (applied == 0)
            throw invariant_error("geo44: no applicable plan in a nonempty batch");
        detail::geometric_check_invariants(inst, d, cells);
    }
    return Solution{std::move(d), "geo44", iterations, policy.label()};
}

}  // namespace udg
