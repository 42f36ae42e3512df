#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "udg/core.hpp"
#include "udg/errors.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Grid index
// ---------------------------------------------------------------------------

struct CellCoord {
    std::int64_t cx = 0;
    std::int64_t cy = 0;

    friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

struct CellCoordHash {
    std::size_t operator()(const CellCoord& c) const {
        std::uint64_t h = static_cast<std::uint64_t>(c.cx) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(c.cy) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

/// Hash grid with square cells of side equal to the instance threshold. All
/// neighbors of a point lie in the 3x3 closed vicinity of its cell. Occupied
/// cells get dense ids; point lists are stored contiguously (CSR) and each
/// cell pre-resolves its closed vicinity to dense ids, so vicinity scans do
/// no hashing.
class GridIndex {
public:
    explicit GridIndex(const PointInstance& inst) : cell_size_(inst.threshold()) {
        const int n = inst.n();
        point_cell_.resize(static_cast<std::size_t>(n));
        lookup_.reserve(static_cast<std::size_t>(n) * 2);
        for (int i = 0; i < n; ++i) {
            CellCoord c = cell_of(inst.point(i));
            auto [it, fresh] = lookup_.try_emplace(c, static_cast<int>(coords_.size()));
            if (fresh) coords_.push_back(c);
            point_cell_[static_cast<std::size_t>(i)] = it->second;
        }
        const int cells = static_cast<int>(coords_.size());
        starts_.assign(static_cast<std::size_t>(cells) + 1, 0);
        for (int id : point_cell_) ++starts_[static_cast<std::size_t>(id) + 1];
        for (int c = 0; c < cells; ++c)
            starts_[static_cast<std::size_t>(c) + 1] += starts_[static_cast<std::size_t>(c)];
        items_.resize(static_cast<std::size_t>(n));
        std::vector<int> cursor(starts_.begin(), starts_.end() - 1);
        for (int i = 0; i < n; ++i)
            items_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(
                point_cell_[static_cast<std::size_t>(i)])]++)] = i;
        vicinity_.resize(static_cast<std::size_t>(cells));
        for (int c = 0; c < cells; ++c) {
            auto& around = vicinity_[static_cast<std::size_t>(c)];
            int k = 0;
            for (std::int64_t dx = -1; dx <= 1; ++dx)
                for (std::int64_t dy = -1; dy <= 1; ++dy) {
                    int id = cell_id_at({coords_[static_cast<std::size_t>(c)].cx + dx,
                                         coords_[static_cast<std::size_t>(c)].cy + dy});
                    if (id >= 0) around[static_cast<std::size_t>(k++)] = id;
                }
            for (; k < 9; ++k) around[static_cast<std::size_t>(k)] = -1;
        }
    }

    std::int64_t cell_size() const { return cell_size_; }
    int cell_count() const { return static_cast<int>(coords_.size()); }

    CellCoord cell_of(const Point& p) const {
        return {floor_div(p.x, cell_size_), floor_div(p.y, cell_size_)};
    }

    /// Dense id of the cell at the given coordinates, or -1 if unoccupied.
    int cell_id_at(const CellCoord& c) const {
        auto it = lookup_.find(c);
        return it == lookup_.end() ? -1 : it->second;
    }

    int cell_id_of_point(int i) const { return point_cell_[static_cast<std::size_t>(i)]; }
    CellCoord cell_of_point_id(int i) const {
        return coords_[static_cast<std::size_t>(cell_id_of_point(i))];
    }
    CellCoord coord_of_cell(int id) const { return coords_[static_cast<std::size_t>(id)]; }

    /// Point ids in a cell (dense id).
    std::pair<const int*, const int*> points_in_cell(int id) const {
        return {items_.data() + starts_[static_cast<std::size_t>(id)],
                items_.data() + starts_[static_cast<std::size_t>(id) + 1]};
    }

    /// Point ids in the cell at the given coordinates (empty if unoccupied).
    std::vector<int> points_in(const CellCoord& c) const {
        int id = cell_id_at(c);
        if (id < 0) return {};
        auto [first, last] = points_in_cell(id);
        return std::vector<int>(first, last);
    }

    /// Dense ids of the at most 9 occupied cells in the closed vicinity,
    /// -1 terminated.
    const std::array<int, 9>& vicinity_of_cell(int id) const {
        return vicinity_[static_cast<std::size_t>(id)];
    }

    /// Visits the point ids in the 3x3 closed vicinity of the given cell.
    template <typename Fn>
    void for_each_in_vicinity(int cell_id, Fn&& fn) const {
        for (int around : vicinity_of_cell(cell_id)) {
            if (around < 0) break;
            auto [first, last] = points_in_cell(around);
            for (; first != last; ++first) fn(*first);
        }
    }

    template <typename Fn>
    void for_each_in_vicinity(const CellCoord& c, Fn&& fn) const {
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                int id = cell_id_at({c.cx + dx, c.cy + dy});
                if (id < 0) continue;
                auto [first, last] = points_in_cell(id);
                for (; first != last; ++first) fn(*first);
            }
    }

private:
    std::int64_t cell_size_;
    std::unordered_map<CellCoord, int, CellCoordHash> lookup_;
    std::vector<CellCoord> coords_;
    std::vector<int> point_cell_;
    std::vector<int> starts_;
    std::vector<int> items_;
    std::vector<std::array<int, 9>> vicinity_;
};

inline GridIndex build_grid(const PointInstance& inst) { return GridIndex(inst); }

/// Exact adjacency construction via grid vicinity scans; edge iff squared
/// distance <= threshold^2. Expected O(n + m).
inline Graph build_adjacency(const PointInstance& inst, const GridIndex& grid) {
    const uint128 thr2 = inst.squared_threshold();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < inst.n(); ++i) {
        grid.for_each_in_vicinity(grid.cell_id_of_point(i), [&](int j) {
            if (j < i && squared_distance(inst.point(i), inst.point(j)) <= thr2)
                edges.emplace_back(j, i);
        });
    }
    return Graph::from_edges(inst.n(), edges);
}

inline Graph build_adjacency(const PointInstance& inst) {
    return build_adjacency(inst, build_grid(inst));
}

// ---------------------------------------------------------------------------
// Common intersection of congruent disks
// ---------------------------------------------------------------------------

namespace detail {

inline int128 cross(const Point& o, const Point& a, const Point& b) {
    return int128{a.x - o.x} * int128{b.y - o.y} -
           int128{a.y - o.y} * int128{b.x - o.x};
}

/// Strictly convex hull (collinear middle points dropped), CCW order.
/// Input must be deduplicated.
inline std::vector<int> convex_hull(const std::vector<Point>& pts, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Point &p = pts[static_cast<std::size_t>(a)], &q = pts[static_cast<std::size_t>(b)];
        return p.x != q.x ? p.x < q.x : p.y < q.y;
    });
    if (idx.size() <= 2) return idx;
    std::vector<int> hull(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {  // lower
        while (k >= 2 && cross(pts[static_cast<std::size_t>(hull[k - 2])],
                               pts[static_cast<std::size_t>(hull[k - 1])],
                               pts[static_cast<std::size_t>(idx[i])]) <= 0)
            --k;
        hull[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, lower = k + 1; i-- > 0;) {  // upper
        while (k >= lower && cross(pts[static_cast<std::size_t>(hull[k - 2])],
                                   pts[static_cast<std::size_t>(hull[k - 1])],
                                   pts[static_cast<std::size_t>(idx[i])]) <= 0)
            --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline double wrap_angle(double a) {
    while (a > M_PI) a -= 2 * M_PI;
    while (a <= -M_PI) a += 2 * M_PI;
    return a;
}

}  // namespace detail

/// The common intersection of unit(-threshold) radius disks centered at the
/// source points. Convex; boundary stored as circular arcs sorted by the
/// angle of their start vertex around an interior reference point. Queries
/// are filtered by angular binary search and confirmed by exact integer
/// distance checks; degenerate regions (tangency, near-zero area) answer by
/// an exact scan over all distinct centers instead.
class Region {
public:
    struct Arc {
        int center = 0;      // index into centers()
        double a0 = 0;       // angular interval on the circle, a0 <= a1
        double a1 = 0;
        double vx = 0;       // start vertex (normalized coordinates)
        double vy = 0;
        double vertex_angle = 0;  // angle of the start vertex around the reference
    };

    Region(std::vector<Point> centers, std::int64_t radius)
        : centers_(std::move(centers)), radius_(radius) {
        if (centers_.empty()) throw input_error("region needs at least one center");
        if (radius_ < 1 || radius_ > kCoordLimit)
            throw input_error("region radius out of range");
        build();
    }

    const std::vector<Point>& centers() const { return centers_; }
    std::int64_t radius() const { return radius_; }

    /// True iff the region is empty (no point lies in all disks).
    /// Conservative: degenerate single-point regions report non-empty.
    bool empty() const { return empty_; }

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool exact_fallback() const { return fallback_; }

    /// True iff p is within `radius` of every source center (closed
    /// condition, decided exactly).
    bool contains(const Point& p) const {
        if (empty_) return false;
        if (point_degenerate_)
            return 2 * int128{p.x} == point2_x_ && 2 * int128{p.y} == point2_y_;
        if (fallback_ || arcs_.size() < 2) return contains_scan(p);

        const double px = normal_x(p.x), py = normal_y(p.y);
        double theta = std::atan2(py - ref_y_, px - ref_x_);
        // Arc i covers vertex angles [arc[i].vertex_angle, arc[i+1].vertex_angle).
        auto it = std::upper_bound(arcs_.begin(), arcs_.end(), theta,
                                   [](double t, const Arc& a) { return t < a.vertex_angle; });
        std::size_t idx = (it == arcs_.begin() ? arcs_.size() : static_cast<std::size_t>(it - arcs_.begin())) - 1;
        // The located arc's disk certifies the answer; its neighbors absorb
        // floating-point slop in theta. All checks are exact.
        const std::size_t k = arcs_.size();
        for (std::size_t off = 0; off < std::min<std::size_t>(5, k); ++off) {
            std::size_t j = (idx + k + off - 2) % k;
            if (!in_disk(p, arcs_[j].center)) return false;
        }
        return true;
    }

private:
    bool in_disk(const Point& p, int center_idx) const {
        return squared_distance(p, centers_[static_cast<std::size_t>(center_idx)]) <=
               static_cast<uint128>(radius_) * static_cast<uint128>(radius_);
    }

    bool contains_scan(const Point& p) const {
        for (int i = 0; i < static_cast<int>(centers_.size()); ++i)
            if (!in_disk(p, i)) return false;
        return true;
    }

    double normal_x(std::int64_t x) const {
        return static_cast<double>(x - origin_.x) / static_cast<double>(radius_);
    }
    double normal_y(std::int64_t y) const {
        return static_cast<double>(y - origin_.y) / static_cast<double>(radius_);
    }

    void build() {
        // Distinct centers; duplicates impose the same constraint.
        std::vector<int> uniq;
        {
            std::vector<int> order(centers_.size());
            for (std::size_t i = 0; i < centers_.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                const Point &p = centers_[static_cast<std::size_t>(a)],
                            &q = centers_[static_cast<std::size_t>(b)];
                return p.x != q.x ? p.x < q.x : p.y < q.y;
            });
            for (int id : order)
                if (uniq.empty() ||
                    !(centers_[static_cast<std::size_t>(id)] == centers_[static_cast<std::size_t>(uniq.back())]))
                    uniq.push_back(id);
        }
        origin_ = centers_[static_cast<std::size_t>(uniq.front())];

        if (uniq.size() == 1) {  // single disk
            fallback_ = true;    // one exact check per query
            return;
        }

        // Only hull circles can carry boundary arcs: for equal radii, the
        // disk of a convex combination of centers contains the intersection
        // of the combined disks.
        std::vector<int> hull = detail::convex_hull(centers_, uniq);

        // Exact pair classification: any two source disks farther than 2r
        // apart make the region empty; a pair at exactly 2r pins the region
        // to their midpoint.
        const uint128 four_r2 = 4 * static_cast<uint128>(radius_) * static_cast<uint128>(radius_);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            for (std::size_t j = i + 1; j < hull.size(); ++j) {
                const Point &a = centers_[static_cast<std::size_t>(hull[i])],
                            &b = centers_[static_cast<std::size_t>(hull[j])];
                uint128 d2 = squared_distance(a, b);
                if (d2 > four_r2) {
                    empty_ = true;
                    return;
                }
                if (d2 == four_r2) {
                    resolve_tangent_pair(a, b);
                    return;
                }
            }
        }

        build_arcs(hull);
    }

    void resolve_tangent_pair(const Point& a, const Point& b) {
        // Region is contained in the midpoint of ab; doubled coordinates keep
        // the test exact for half-integer midpoints.
        point2_x_ = int128{a.x} + int128{b.x};
        point2_y_ = int128{a.y} + int128{b.y};
        const uint128 four_r2 = 4 * static_cast<uint128>(radius_) * static_cast<uint128>(radius_);
        for (const Point& c : centers_) {
            int128 dx = point2_x_ - 2 * int128{c.x};
            int128 dy = point2_y_ - 2 * int128{c.y};
            uint128 d2 = static_cast<uint128>(dx * dx) + static_cast<uint128>(dy * dy);
            if (d2 > four_r2) {
                empty_ = true;
                return;
            }
        }
        point_degenerate_ = true;
    }

    void build_arcs(const std::vector<int>& hull) {
        // Arc of each hull circle = intersection of the angular intervals
        // imposed by the other hull circles. The interval imposed on circle j
        // by center i is centered on the direction j->i with half-width
        // arccos(d / 2r).
        constexpr double kTol = 1e-9;
        struct RawArc {
            int center;
            double mid, half;  // interval on the circle
        };
        std::vector<RawArc> raw;
        for (std::size_t jj = 0; jj < hull.size(); ++jj) {
            const int j = hull[jj];
            const Point& cj = centers_[static_cast<std::size_t>(j)];
            double mid = 0, half = 0;
            bool alive = true, first = true;
            for (std::size_t ii = 0; ii < hull.size() && alive; ++ii) {
                if (ii == jj) continue;
                const int i = hull[ii];
                const Point& ci = centers_[static_cast<std::size_t>(i)];
                const double dx = normal_x(ci.x) - normal_x(cj.x);
                const double dy = normal_y(ci.y) - normal_y(cj.y);
                const double d = std::hypot(dx, dy);
                const double phi = std::atan2(dy, dx);
                const double alpha = std::acos(std::clamp(d / 2.0, 0.0, 1.0));
                if (first) {
                    mid = phi;
                    half = alpha;
                    first = false;
                    continue;
                }
                // Clip [mid-half, mid+half] by [phi-alpha, phi+alpha].
                const double delta = detail::wrap_angle(phi - mid);
                double lo = std::max(-half, delta - alpha);
                double hi = std::min(half, delta + alpha);
                if (lo > hi) {
                    alive = false;
                    break;
                }
                mid = detail::wrap_angle(mid + (lo + hi) / 2);
                half = (hi - lo) / 2;
            }
            if (alive && half > kTol) raw.push_back({j, mid, half});
        }

        if (raw.size() < 2) {
            // Zero-area or inconsistent structure; exact scan answers queries.
            fallback_ = true;
            return;
        }

        // Materialize arcs and their start vertices, then order them around
        // the mean of the vertices (interior by convexity).
        struct Built {
            Arc arc;
            double ex, ey;  // end vertex
        };
        std::vector<Built> built;
        double sx = 0, sy = 0;
        for (const RawArc& r : raw) {
            const Point& c = centers_[static_cast<std::size_t>(r.center)];
            Built b;
            b.arc.center = r.center;
            b.arc.a0 = r.mid - r.half;
            b.arc.a1 = r.mid + r.half;
            b.arc.vx = normal_x(c.x) + std::cos(b.arc.a0);
            b.arc.vy = normal_y(c.y) + std::sin(b.arc.a0);
            b.ex = normal_x(c.x) + std::cos(b.arc.a1);
            b.ey = normal_y(c.y) + std::sin(b.arc.a1);
            sx += b.arc.vx + b.ex;
            sy += b.arc.vy + b.ey;
            built.push_back(b);
        }
        ref_x_ = sx / (2.0 * static_cast<double>(built.size()));
        ref_y_ = sy / (2.0 * static_cast<double>(built.size()));

        // Thin regions cannot anchor a reliable angular order.
        constexpr double kThin = 1e-7;
        double spread = 0;
        for (const Built& b : built)
            spread = std::max({spread, std::abs(b.arc.vx - ref_x_), std::abs(b.arc.vy - ref_y_)});
        if (spread < kThin) {
            fallback_ = true;
            return;
        }

        for (Built& b : built)
            b.arc.vertex_angle = std::atan2(b.arc.vy - ref_y_, b.arc.vx - ref_x_);
        std::sort(built.begin(), built.end(),
                  [](const Built& a, const Built& b) { return a.arc.vertex_angle < b.arc.vertex_angle; });

        // Consecutive arcs must share endpoints; large seams mean the float
        // construction went sideways, in which case queries fall back to the
        // exact scan.
        constexpr double kSeam = 1e-6;
        for (std::size_t i = 0; i < built.size(); ++i) {
            const Built& cur = built[i];
            const Built& nxt = built[(i + 1) % built.size()];
            if (std::abs(cur.ex - nxt.arc.vx) > kSeam || std::abs(cur.ey - nxt.arc.vy) > kSeam) {
                fallback_ = true;
                return;
            }
        }

        arcs_.reserve(built.size());
        for (const Built& b : built) arcs_.push_back(b.arc);
    }

    std::vector<Point> centers_;
    std::int64_t radius_;
    Point origin_{};  // normalization offset
    std::vector<Arc> arcs_;
    double ref_x_ = 0, ref_y_ = 0;
    bool empty_ = false;
    bool point_degenerate_ = false;
    bool fallback_ = false;
    int128 point2_x_ = 0, point2_y_ = 0;
};

inline Region disks_common_intersection(std::vector<Point> centers, std::int64_t radius) {
    return Region(std::move(centers), radius);
}

inline bool region_contains(const Region& r, const Point& p) { return r.contains(p); }

// ---------------------------------------------------------------------------
// Geometric maximal independent set
// ---------------------------------------------------------------------------

/// Maximal independent set of the implied unit disk graph in O(n) expected
/// time: repeatedly take the first live point in policy order and kill its
/// closed neighborhood via vicinity scans.
inline VertexSet geometric_mis(const PointInstance& inst, const GridIndex& grid,
                               const OrderPolicy& policy = OrderPolicy::by_id()) {
    const uint128 thr2 = inst.squared_threshold();
    std::vector<std::uint8_t> alive(static_cast<std::size_t>(inst.n()), 1);
    VertexSet d(inst.n());
    std::vector<std::uint8_t> per_cell(static_cast<std::size_t>(grid.cell_count()), 0);
    for (int v : policy.permutation(inst.n())) {
        if (!alive[static_cast<std::size_t>(v)]) continue;
        d.insert(v);
        // Packing: a threshold-side cell holds at most 4 pairwise
        // non-adjacent points.
        if (++per_cell[static_cast<std::size_t>(grid.cell_id_of_point(v))] > 4)
            throw invariant_error("more than 4 independent points in one grid cell");
        grid.for_each_in_vicinity(grid.cell_id_of_point(v), [&](int j) {
            if (alive[static_cast<std::size_t>(j)] &&
                squared_distance(inst.point(v), inst.point(j)) <= thr2)
                alive[static_cast<std::size_t>(j)] = 0;
        });
    }
    return d;
}

inline VertexSet geometric_mis(const PointInstance& inst,
                               const OrderPolicy& policy = OrderPolicy::by_id()) {
    return geometric_mis(inst, build_grid(inst), policy);
}

}  // namespace udg
