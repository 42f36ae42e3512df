#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udg/core.hpp"
#include "udg/errors.hpp"
#include "udg/rng.hpp"

namespace udg {

// ---------------------------------------------------------------------------
// Random instance generation
// ---------------------------------------------------------------------------

struct GeneratorConfig {
    int n = 1;
    std::int64_t box_side = 1;
    std::int64_t threshold = 1;
    std::uint64_t seed = 0;
    int clusters = 0;          // 0 = uniform
    std::int64_t spread = 0;   // cluster half-width; defaults to 2*threshold

    void validate() const {
        if (n < 1) throw input_error("generator: n must be >= 1");
        if (threshold < 1) throw input_error("generator: threshold must be >= 1");
        if (box_side < threshold)
            throw input_error("generator: box side must be >= threshold");
        if (box_side > kCoordLimit)
            throw input_error("generator: box side exceeds coordinate limit");
        if (clusters < 0) throw input_error("generator: negative cluster count");
    }
};

/// Deterministic point set for (config, seed); coordinates in [0, box_side].
inline PointInstance generate(const GeneratorConfig& cfg) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(cfg.n));
    if (cfg.clusters == 0) {
        for (int i = 0; i < cfg.n; ++i)
            pts.push_back({rng.range(0, cfg.box_side), rng.range(0, cfg.box_side)});
    } else {
        const std::int64_t spread = cfg.spread > 0 ? cfg.spread : 2 * cfg.threshold;
        std::vector<Point> centers;
        centers.reserve(static_cast<std::size_t>(cfg.clusters));
        for (int c = 0; c < cfg.clusters; ++c)
            centers.push_back({rng.range(0, cfg.box_side), rng.range(0, cfg.box_side)});
        auto clamp = [&](std::int64_t v) {
            return std::min(std::max(v, std::int64_t{0}), cfg.box_side);
        };
        for (int i = 0; i < cfg.n; ++i) {
            const Point& c = centers[rng.below(static_cast<std::uint64_t>(cfg.clusters))];
            pts.push_back({clamp(c.x + rng.range(-spread, spread)),
                           clamp(c.y + rng.range(-spread, spread))});
        }
    }
    return PointInstance(std::move(pts), cfg.threshold);
}

// ---------------------------------------------------------------------------
// Bundled lower-bound instances
// ---------------------------------------------------------------------------

namespace detail {

// fig4: vertex 0 is the central reliever, 1..4 the four cores, 5..8 the four
// witnesses; the 24 remaining vertices expand the +/- coordinate pairs in row
// order, + before -.
inline const std::vector<Point>& fig4_points() {
    static const std::vector<Point> pts = [] {
        std::vector<Point> p;
        p.push_back({0, 0});
        p.push_back({-2492384, 879081});
        p.push_back({-1310377, 2686162});
        p.push_back({1310377, 2686162});
        p.push_back({2492384, 879081});
        p.push_back({-492423, 870355});
        p.push_back({-484809, 874619});
        p.push_back({484809, 874619});
        p.push_back({492423, 870355});
        const Point mirrored[] = {
            {776025, 3531423},  {1492384, 879081},  {999986, 5235},
            {2309705, 2722805}, {3491646, 917468},  {3023782, 31960},
            {1776763, 3570742}, {1840296, 1838114}, {2022913, -3866},
            {503019, -864274},  {2957226, 1764474}, {810377, 1820137},
        };
        for (const Point& q : mirrored) {
            p.push_back(q);
            p.push_back({-q.x, q.y});
        }
        return p;
    }();
    return pts;
}

inline const std::vector<Point>& fig6_points() {
    static const std::vector<Point> pts = [] {
        std::vector<Point> p;
        p.push_back({0, 0});
        p.push_back({0, 4500000});
        const Point mirrored[] = {
            {336577, 3647829},  {3372414, 3440722}, {3657983, 1789254},
            {469471, 882947},   {2857376, 5297889}, {3887452, 5297889},
            {1043683, 2940723}, {2506389, 2940723}, {892089, 1789254},
            {2657983, 1789254}, {1775036, 1258725}, {529919, 5348048},
            {997564, 4430244},  {4605648, 790625},  {5515150, 1274216},
            {5515150, 2304292}, {4605648, 2787883}, {1775036, 2258725},
            {2373785, 4388387}, {4657983, 1789254}, {3372414, 4440722},
            {515038, -857167},  {999780, 20942},    {4371043, 4388387},
        };
        for (const Point& q : mirrored) {
            p.push_back(q);
            p.push_back({-q.x, q.y});
        }
        return p;
    }();
    return pts;
}

}  // namespace detail

/// The two bundled instances ("fig4": 33 points, "fig6": 50 points), both
/// with threshold 1000001.
inline PointInstance paper_instance(const std::string& name) {
    if (name == "fig4") return PointInstance(detail::fig4_points(), 1000001);
    if (name == "fig6") return PointInstance(detail::fig6_points(), 1000001);
    throw input_error("unknown builtin instance: " + name);
}

// ---------------------------------------------------------------------------
// File formats (line-based text, decimal integers, space separated)
//
//   points:   "udgp <n> <threshold>" then n lines "<x> <y>"
//   graph:    "udgg <n> <m>" then m lines "<u> <v>" with u < v
//   solution: "sol <k>" then k lines "<v>", ascending
// ---------------------------------------------------------------------------

namespace detail {

class LineReader {
public:
    LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    std::vector<std::int64_t> fields(std::size_t count) {
        std::string line = next_line();
        std::vector<std::int64_t> out;
        out.reserve(count);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < count; ++i) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            std::size_t end = pos;
            while (end < line.size() && line[end] != ' ') ++end;
            if (pos == end) fail("expected " + std::to_string(count) + " fields");
            std::int64_t value = 0;
            auto res = std::from_chars(line.data() + pos, line.data() + end, value);
            if (res.ec != std::errc{} || res.ptr != line.data() + end)
                fail("bad integer '" + line.substr(pos, end - pos) + "'");
            out.push_back(value);
            pos = end;
        }
        while (pos < line.size() && line[pos] == ' ') ++pos;
        if (pos != line.size()) fail("trailing garbage after " + std::to_string(count) + " fields");
        return out;
    }

    std::string magic() {
        std::string line = next_line();
        std::size_t space = line.find(' ');
        std::string word = line.substr(0, space);
        rest_ = space == std::string::npos ? "" : line.substr(space);
        return word;
    }

    std::vector<std::int64_t> magic_fields(std::size_t count) {
        std::string saved = rest_;
        std::vector<std::int64_t> out;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < count; ++i) {
            while (pos < saved.size() && saved[pos] == ' ') ++pos;
            std::size_t end = pos;
            while (end < saved.size() && saved[end] != ' ') ++end;
            if (pos == end) fail("expected " + std::to_string(count) + " header fields");
            std::int64_t value = 0;
            auto res = std::from_chars(saved.data() + pos, saved.data() + end, value);
            if (res.ec != std::errc{} || res.ptr != saved.data() + end)
                fail("bad integer '" + saved.substr(pos, end - pos) + "'");
            out.push_back(value);
            pos = end;
        }
        while (pos < saved.size() && saved[pos] == ' ') ++pos;
        if (pos != saved.size()) fail("trailing garbage in header");
        return out;
    }

    void expect_eof() {
        std::string line;
        if (std::getline(in_, line)) {
            ++line_;
            fail("trailing garbage after expected end of file");
        }
    }

    [[noreturn]] void fail(const std::string& what) { throw parse_error(name_, line_, what); }

private:
    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) {
            ++line_;
            fail("unexpected end of file");
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    std::istream& in_;
    std::string name_;
    std::size_t line_ = 0;
    std::string rest_;
};

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open " + path + " for writing");
    return out;
}

}  // namespace detail

inline PointInstance read_points(std::istream& in, const std::string& name) {
    detail::LineReader reader(in, name);
    if (reader.magic() != "udgp") reader.fail("expected 'udgp <n> <threshold>' header");
    auto header = reader.magic_fields(2);
    if (header[0] < 0) reader.fail("negative point count");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(header[0]));
    for (std::int64_t i = 0; i < header[0]; ++i) {
        auto xy = reader.fields(2);
        pts.push_back({xy[0], xy[1]});
    }
    reader.expect_eof();
    try {
        return PointInstance(std::move(pts), header[1]);
    } catch (const input_error& e) {
        reader.fail(e.what());
    }
}

inline PointInstance read_points(const std::string& path) {
    auto in = detail::open_input(path);
    return read_points(in, path);
}

inline void write_points(std::ostream& out, const PointInstance& inst) {
    out << "udgp " << inst.n() << ' ' << inst.threshold() << '\n';
    for (const Point& p : inst.points()) out << p.x << ' ' << p.y << '\n';
}

inline void write_points(const std::string& path, const PointInstance& inst) {
    auto out = detail::open_output(path);
    write_points(out, inst);
}

inline Graph read_graph(std::istream& in, const std::string& name) {
    detail::LineReader reader(in, name);
    if (reader.magic() != "udgg") reader.fail("expected 'udgg <n> <m>' header");
    auto header = reader.magic_fields(2);
    if (header[0] < 0 || header[0] > INT32_MAX) reader.fail("vertex count out of range");
    if (header[1] < 0) reader.fail("negative edge count");
    const int n = static_cast<int>(header[0]);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(header[1]));
    for (std::int64_t i = 0; i < header[1]; ++i) {
        auto uv = reader.fields(2);
        if (uv[0] < 0 || uv[0] >= n || uv[1] < 0 || uv[1] >= n)
            reader.fail("vertex id out of range");
        if (uv[0] >= uv[1]) reader.fail("edge must satisfy u < v");
        edges.emplace_back(static_cast<int>(uv[0]), static_cast<int>(uv[1]));
    }
    reader.expect_eof();
    try {
        return Graph::from_edges(n, edges);
    } catch (const input_error& e) {
        reader.fail(e.what());
    }
}

inline Graph read_graph(const std::string& path) {
    auto in = detail::open_input(path);
    return read_graph(in, path);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << "udgg " << g.n() << ' ' << g.m() << '\n';
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

inline void write_graph(const std::string& path, const Graph& g) {
    auto out = detail::open_output(path);
    write_graph(out, g);
}

/// Reads a solution as a raw sorted id list. Range-checking against a graph
/// happens at verify/bind time.
inline std::vector<int> read_solution(std::istream& in, const std::string& name) {
    detail::LineReader reader(in, name);
    if (reader.magic() != "sol") reader.fail("expected 'sol <k>' header");
    auto header = reader.magic_fields(1);
    if (header[0] < 0) reader.fail("negative solution size");
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(header[0]));
    for (std::int64_t i = 0; i < header[0]; ++i) {
        auto v = reader.fields(1);
        if (v[0] < 0 || v[0] > INT32_MAX) reader.fail("vertex id out of range");
        if (!ids.empty() && v[0] <= ids.back()) reader.fail("ids must be strictly ascending");
        ids.push_back(static_cast<int>(v[0]));
    }
    reader.expect_eof();
    return ids;
}

inline std::vector<int> read_solution(const std::string& path) {
    auto in = detail::open_input(path);
    return read_solution(in, path);
}

inline void write_solution(std::ostream& out, const VertexSet& s) {
    out << "sol " << s.size() << '\n';
    for (int v : s.to_sorted_vector()) out << v << '\n';
}

inline void write_solution(const std::string& path, const VertexSet& s) {
    auto out = detail::open_output(path);
    write_solution(out, s);
}

/// Binds a raw solution id list to a graph, rejecting out-of-range ids.
inline VertexSet bind_solution(const Graph& g, const std::vector<int>& ids) {
    VertexSet s(g.n());
    for (int v : ids) s.insert(v);  // insert range-checks
    return s;
}

}  // namespace udg
