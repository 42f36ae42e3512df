#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udg/algorithms.hpp"
#include "udg/core.hpp"
#include "udg/errors.hpp"
#include "udg/instances.hpp"
#include "udg/oracle.hpp"
#include "udg/spatial.hpp"

namespace udg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

namespace detail {

class Report {
public:
    explicit Report(const std::string& command) { add("cmd", command); }

    Report& add(const std::string& key, const std::string& value) {
        fields_.push_back(key + '=' + value);
        return *this;
    }
    Report& add(const std::string& key, long long value) {
        return add(key, std::to_string(value));
    }
    Report& add(const std::string& key, std::size_t value) {
        return add(key, std::to_string(value));
    }
    Report& add_ratio(const std::string& key, long long num, long long den) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(6)
           << static_cast<double>(num) / static_cast<double>(den);
        return add(key, os.str());
    }
    Report& add_ms(const std::string& key, double ms) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(3) << ms;
        return add(key, os.str());
    }

    void print(std::ostream& out) const {
        out << "udgdom-report/1";
        for (const auto& f : fields_) out << ' ' << f;
        out << '\n';
    }

private:
    std::vector<std::string> fields_;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// An instance as loaded from disk or a builtin: always a graph, points when
/// available.
struct LoadedInstance {
    std::string descriptor;
    std::optional<PointInstance> points;
    Graph graph;
};

inline LoadedInstance load_instance(const std::string& path, const std::string& format) {
    LoadedInstance li;
    li.descriptor = path;
    if (format == "points") {
        li.points = read_points(path);
        li.graph = build_adjacency(*li.points);
    } else if (format == "graph") {
        li.graph = read_graph(path);
    } else {
        throw input_error("unknown format: " + format + " (expected points or graph)");
    }
    return li;
}

inline Solution run_algorithm(const std::string& algo, const LoadedInstance& li,
                              const OrderPolicy& order, int cap, std::uint64_t budget) {
    if (algo == "mis5") {
        VertexSet s = maximal_independent_set(li.graph, order);
        return Solution{std::move(s), "mis5", 1, order.label()};
    }
    if (algo == "reduce44") return reduce44_graph(li.graph, order);
    if (algo == "weak43") return weak43(li.graph, order);
    if (algo == "geo44") {
        if (!li.points)
            throw input_error(
                "geo44 needs point coordinates; a graph cannot be converted back to geometry");
        return reduce44_geometric(*li.points, order);
    }
    if (algo == "exact") {
        int effective_cap = cap > 0 ? cap : li.graph.n();
        auto s = exact_min_dominating_set(li.graph, effective_cap, budget);
        if (!s)
            throw budget_error("exact: no dominating set within cap " +
                               std::to_string(effective_cap));
        return Solution{std::move(*s), "exact", 1, order.label()};
    }
    throw input_error("unknown algorithm: " + algo);
}

inline void verify_solution_or_throw(const Graph& g, const Solution& sol) {
    if (!is_dominating(g, sol.set))
        throw invariant_error(sol.algorithm + " produced a non-dominating set");
    if (sol.algorithm != "exact" && !is_independent(g, sol.set))
        throw invariant_error(sol.algorithm + " produced a non-independent set");
}

/// Approximation bound numerator/denominator per algorithm (size*den <= opt*num).
inline std::pair<long long, long long> bound_of(const std::string& algo) {
    if (algo == "mis5") return {5, 1};
    if (algo == "reduce44" || algo == "geo44") return {44, 9};
    if (algo == "weak43") return {43, 9};
    return {1, 1};  // exact
}

struct RatioInstance {
    std::string descriptor;
    std::optional<PointInstance> points;
    Graph graph;
};

inline std::vector<RatioInstance> collect_instances(const std::string& spec,
                                                    std::uint64_t master_seed) {
    std::vector<RatioInstance> out;
    if (spec.rfind("builtin:", 0) == 0) {
        std::string name = spec.substr(8);
        PointInstance inst = paper_instance(name);
        out.push_back({spec, inst, build_adjacency(inst)});
        return out;
    }
    if (spec.rfind("random:", 0) == 0) {
        int max_n = 0, count = 0;
        std::uint64_t seed = master_seed;
        std::stringstream ss(spec.substr(7));
        std::string token;
        while (std::getline(ss, token, ':')) {
            if (token.rfind("n", 0) == 0 && token.size() > 1 && std::isdigit(token[1]))
                max_n = std::stoi(token.substr(1));
            else if (token.rfind("count", 0) == 0)
                count = std::stoi(token.substr(5));
            else if (token.rfind("seed", 0) == 0)
                seed = std::stoull(token.substr(4));
            else
                throw input_error("bad random instance spec token: " + token);
        }
        if (max_n < 1 || count < 1)
            throw input_error("random instance spec needs n<max> and count<k>");
        SplitMix64 rng(seed);
        for (int i = 0; i < count; ++i) {
            GeneratorConfig cfg;
            cfg.n = max_n <= 5 ? max_n
                               : 5 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 4)));
            cfg.threshold = 1000;
            cfg.box_side = cfg.threshold *
                           std::max<std::int64_t>(1, std::llround(std::sqrt(static_cast<double>(cfg.n))));
            cfg.seed = rng.next();
            PointInstance inst = generate(cfg);
            out.push_back({"random#" + std::to_string(i) + ":n" + std::to_string(cfg.n), inst,
                           build_adjacency(inst)});
        }
        return out;
    }
    namespace fs = std::filesystem;
    fs::path p(spec);
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(p)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".pts" || ext == ".udgg") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            if (f.extension() == ".pts") {
                PointInstance inst = read_points(f.string());
                out.push_back({f.string(), inst, build_adjacency(inst)});
            } else {
                out.push_back({f.string(), std::nullopt, read_graph(f.string())});
            }
        }
        if (out.empty()) throw input_error("no .pts or .udgg instances in " + spec);
        return out;
    }
    if (fs::is_regular_file(p)) {
        if (p.extension() == ".udgg") {
            out.push_back({spec, std::nullopt, read_graph(spec)});
        } else {
            PointInstance inst = read_points(spec);
            out.push_back({spec, inst, build_adjacency(inst)});
        }
        return out;
    }
    throw input_error("cannot resolve instance spec: " + spec);
}

/// Candidate order policies for the adversarial search: identity, seeded
/// shuffles, and (when the optimum is known) seeded shuffles with the
/// optimum's vertices demoted to the end of the order.
inline std::vector<OrderPolicy> adversarial_orders(int budget,
                                                   const std::optional<std::vector<int>>& opt) {
    std::vector<OrderPolicy> orders;
    orders.push_back(OrderPolicy::by_id());
    std::uint64_t seed = 1;
    while (static_cast<int>(orders.size()) < budget) {
        orders.push_back(OrderPolicy::seeded(seed));
        if (opt && static_cast<int>(orders.size()) < budget)
            orders.push_back(OrderPolicy::seeded(seed).demote(*opt));
        ++seed;
    }
    return orders;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"udgdom: independent dominating set approximations on unit disk graphs"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a random point instance or export a builtin");
    GeneratorConfig gen_cfg;
    gen_cfg.n = 0;
    std::string gen_out, gen_builtin;
    gen->add_option("--n", gen_cfg.n, "point count");
    gen->add_option("--box", gen_cfg.box_side, "world side length");
    gen->add_option("--threshold", gen_cfg.threshold, "adjacency distance threshold");
    gen->add_option("--seed", gen_cfg.seed, "generator seed");
    gen->add_option("--clusters", gen_cfg.clusters, "cluster count (0 = uniform)");
    gen->add_option("--spread", gen_cfg.spread, "cluster half-width");
    gen->add_option("--builtin", gen_builtin, "export a bundled instance (fig4 or fig6)");
    gen->add_option("--out", gen_out, "output points file")->required();

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "run a solver on an instance");
    std::string solve_algo, solve_input, solve_format = "points", solve_order = "id", solve_out;
    int solve_cap = 0;
    solve->add_option("--algo", solve_algo, "mis5|reduce44|geo44|weak43|exact")->required();
    solve->add_option("--input", solve_input, "instance file")->required();
    solve->add_option("--format", solve_format, "points|graph");
    solve->add_option("--order", solve_order, "order policy: id, seed:S, seed:S+late:v,...");
    solve->add_option("--cap", solve_cap, "size cap (exact only)");
    solve->add_option("--out", solve_out, "solution file to write");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a solution file");
    std::string verify_input, verify_format = "points", verify_solution;
    std::vector<std::string> verify_checks;
    verify->add_option("--input", verify_input, "instance file")->required();
    verify->add_option("--format", verify_format, "points|graph");
    verify->add_option("--solution", verify_solution, "solution file")->required();
    verify->add_option("--check", verify_checks,
                       "dominating|independent|irreducible|overwhelmed (repeatable)");

    // --- ratio -------------------------------------------------------------
    auto* ratio = app.add_subcommand("ratio", "measure approximation ratios against the oracle");
    std::string ratio_algo, ratio_instances;
    int ratio_cap = 0, ratio_search = 0;
    std::uint64_t ratio_seed = 1;
    ratio->add_option("--algo", ratio_algo, "mis5|reduce44|geo44|weak43")->required();
    ratio->add_option("--instances", ratio_instances,
                      "dir | file | builtin:fig4 | builtin:fig6 | random:nN:countK[:seedS]")
        ->required();
    ratio->add_option("--oracle-cap", ratio_cap, "cap for the exact oracle (0 = |mis5|)");
    ratio->add_option("--search-adversarial", ratio_search,
                      "try this many order policies per instance, keeping the worst ratio");
    ratio->add_option("--seed", ratio_seed, "master seed for random instance sets");

    // --- bench -------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "timing trends over instance sizes");
    std::string bench_algo;
    std::vector<long long> bench_sizes;
    int bench_seeds = 5;
    std::int64_t bench_threshold = 1000;
    bench->add_option("--algo", bench_algo, "mis5|reduce44|geo44|weak43")->required();
    bench->add_option("--sizes", bench_sizes, "comma separated instance sizes")
        ->required()
        ->delimiter(',');
    bench->add_option("--seeds", bench_seeds, "seeds per size (median is reported)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--threshold", bench_threshold, "instance threshold");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::uint64_t oracle_budget = default_oracle_budget();

    try {
        if (gen->parsed()) {
            detail::Stopwatch timer;
            detail::Report rep("gen");
            if (!gen_builtin.empty()) {
                PointInstance inst = paper_instance(gen_builtin);
                write_points(gen_out, inst);
                rep.add("builtin", gen_builtin)
                    .add("n", static_cast<long long>(inst.n()))
                    .add("threshold", static_cast<long long>(inst.threshold()));
            } else {
                PointInstance inst = generate(gen_cfg);
                write_points(gen_out, inst);
                rep.add("n", static_cast<long long>(inst.n()))
                    .add("threshold", static_cast<long long>(inst.threshold()))
                    .add("box", static_cast<long long>(gen_cfg.box_side))
                    .add("seed", static_cast<long long>(gen_cfg.seed));
            }
            rep.add("out", gen_out).add_ms("time_ms", timer.ms());
            rep.print(out);
            return kExitOk;
        }

        if (solve->parsed()) {
            OrderPolicy order = OrderPolicy::parse(solve_order);
            detail::LoadedInstance li = detail::load_instance(solve_input, solve_format);
            detail::Stopwatch timer;
            Solution sol = detail::run_algorithm(solve_algo, li, order, solve_cap, oracle_budget);
            const double elapsed = timer.ms();
            detail::verify_solution_or_throw(li.graph, sol);
            if (!solve_out.empty()) write_solution(solve_out, sol.set);
            detail::Report rep("solve");
            rep.add("algo", sol.algorithm)
                .add("input", solve_input)
                .add("n", static_cast<long long>(li.graph.n()))
                .add("m", li.graph.m())
                .add("size", sol.set.size())
                .add("iterations", static_cast<long long>(sol.iterations))
                .add("order", sol.order_policy);
            if (solve_algo == "exact") {
                rep.add("opt", sol.set.size());
                rep.add_ratio("ratio", 1, 1);
            }
            rep.add_ms("time_ms", elapsed);
            if (!solve_out.empty()) rep.add("out", solve_out);
            rep.print(out);
            return kExitOk;
        }

        if (verify->parsed()) {
            detail::LoadedInstance li = detail::load_instance(verify_input, verify_format);
            std::vector<int> ids = read_solution(verify_solution);
            VertexSet s = bind_solution(li.graph, ids);
            if (verify_checks.empty()) verify_checks = {"dominating", "independent"};
            bool ok = true;
            for (const std::string& check : verify_checks) {
                bool pass = false;
                std::string detail_msg;
                if (check == "dominating") {
                    pass = is_dominating(li.graph, s);
                } else if (check == "independent") {
                    pass = is_independent(li.graph, s);
                } else if (check == "irreducible") {
                    pass = true;
                    for (const Corona& c : enumerate_coronas(li.graph, s)) {
                        if (auto core = find_reduction_core(li.graph, s, c)) {
                            pass = false;
                            detail_msg = "reducible corona {" + std::to_string(c.petals[0]);
                            for (int i = 1; i < 5; ++i) detail_msg += "," + std::to_string(c.petals[i]);
                            detail_msg += "} core " + std::to_string(*core);
                            break;
                        }
                    }
                } else if (check == "overwhelmed") {
                    pass = true;
                    for (const Corona& c : enumerate_coronas(li.graph, s)) {
                        if (auto plan = find_weak_reduction(li.graph, s, c)) {
                            pass = false;
                            detail_msg = "weakly reducible corona {" + std::to_string(c.petals[0]);
                            for (int i = 1; i < 5; ++i) detail_msg += "," + std::to_string(c.petals[i]);
                            detail_msg += "} core " + std::to_string(plan->core);
                            break;
                        }
                    }
                } else {
                    throw input_error("unknown check: " + check);
                }
                out << "check " << check << ": " << (pass ? "pass" : "fail");
                if (!detail_msg.empty()) out << " (" << detail_msg << ")";
                out << '\n';
                ok = ok && pass;
            }
            return ok ? kExitOk : kExitVerification;
        }

        if (ratio->parsed()) {
            auto instances = detail::collect_instances(ratio_instances, ratio_seed);
            auto [bound_num, bound_den] = detail::bound_of(ratio_algo);
            long long worst_num = 0, worst_den = 1;
            double ratio_sum = 0;
            int rated = 0;
            bool violated = false;
            for (const auto& ri : instances) {
                detail::LoadedInstance li{ri.descriptor, ri.points, ri.graph};
                detail::Report rep("ratio");
                rep.add("algo", ratio_algo).add("instance", ri.descriptor);
                rep.add("n", static_cast<long long>(ri.graph.n()));
                std::optional<std::vector<int>> opt_ids;
                long long opt = 0;
                try {
                    int cap = ratio_cap > 0
                                  ? ratio_cap
                                  : static_cast<int>(maximal_independent_set(ri.graph).size());
                    auto best = exact_min_dominating_set(ri.graph, cap, oracle_budget);
                    if (best) {
                        opt = static_cast<long long>(best->size());
                        opt_ids = best->to_sorted_vector();
                    }
                } catch (const budget_error&) {
                    rep.add("oracle", "budget-exhausted");
                }
                OrderPolicy base = OrderPolicy::by_id();
                std::size_t worst_size = 0;
                std::string worst_order;
                auto consider = [&](const OrderPolicy& order) {
                    Solution sol =
                        detail::run_algorithm(ratio_algo, li, order, 0, oracle_budget);
                    detail::verify_solution_or_throw(ri.graph, sol);
                    if (sol.set.size() > worst_size) {
                        worst_size = sol.set.size();
                        worst_order = sol.order_policy;
                    }
                };
                consider(base);
                if (ratio_search > 1)
                    for (const OrderPolicy& order :
                         detail::adversarial_orders(ratio_search, opt_ids))
                        consider(order);
                rep.add("size", worst_size).add("order", worst_order);
                if (opt > 0) {
                    rep.add("opt", opt);
                    rep.add_ratio("ratio", static_cast<long long>(worst_size), opt);
                    ratio_sum += static_cast<double>(worst_size) / static_cast<double>(opt);
                    ++rated;
                    if (worst_num * opt < static_cast<long long>(worst_size) * worst_den) {
                        worst_num = static_cast<long long>(worst_size);
                        worst_den = opt;
                    }
                    if (static_cast<long long>(worst_size) * bound_den > bound_num * opt)
                        violated = true;
                }
                rep.print(out);
            }
            detail::Report summary("ratio-summary");
            summary.add("algo", ratio_algo).add("instances", instances.size());
            if (rated > 0) {
                summary.add_ratio("max_ratio", worst_num, worst_den);
                std::ostringstream mean;
                mean << std::fixed << std::setprecision(6) << ratio_sum / rated;
                summary.add("mean_ratio", mean.str());
            }
            summary.add("bound_respected", violated ? "no" : "yes");
            summary.print(out);
            return violated ? kExitVerification : kExitOk;
        }

        if (bench->parsed()) {
            double prev_median = 0;
            for (std::size_t si = 0; si < bench_sizes.size(); ++si) {
                const long long n = bench_sizes[si];
                if (n < 1) throw input_error("bench size must be positive");
                std::vector<double> times;
                std::size_t size_sum = 0;
                for (int s = -1; s < bench_seeds; ++s) {  // s = -1 is an untimed warmup
                    GeneratorConfig cfg;
                    cfg.n = static_cast<int>(n);
                    cfg.threshold = bench_threshold;
                    cfg.box_side = cfg.threshold *
                                   std::max<std::int64_t>(
                                       1, std::llround(std::sqrt(static_cast<double>(n))));
                    cfg.seed = 0xb5ac0ULL + static_cast<std::uint64_t>(std::max(s, 0));
                    PointInstance inst = generate(cfg);
                    if (bench_algo == "geo44") {
                        detail::Stopwatch timer;
                        Solution sol = reduce44_geometric(inst);
                        if (s < 0) continue;
                        times.push_back(timer.ms());
                        size_sum += sol.set.size();
                    } else {
                        Graph g = build_adjacency(inst);
                        detail::LoadedInstance li{"bench", inst, std::move(g)};
                        detail::Stopwatch timer;
                        Solution sol = detail::run_algorithm(bench_algo, li, OrderPolicy::by_id(),
                                                             0, oracle_budget);
                        if (s < 0) continue;
                        times.push_back(timer.ms());
                        size_sum += sol.set.size();
                    }
                }
                std::sort(times.begin(), times.end());
                const double median = times[times.size() / 2];
                detail::Report rep("bench");
                rep.add("algo", bench_algo)
                    .add("n", n)
                    .add("seeds", static_cast<long long>(bench_seeds))
                    .add_ms("median_ms", median)
                    .add("mean_size", static_cast<long long>(
                                          size_sum / static_cast<std::size_t>(bench_seeds)));
                if (si > 0 && prev_median > 0) {
                    std::ostringstream os;
                    os << std::fixed << std::setprecision(3) << median / prev_median;
                    rep.add("doubling_ratio", os.str());
                }
                rep.print(out);
                prev_median = median;
            }
            return kExitOk;
        }
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const budget_error& e) {
        err << "budget error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const invariant_error& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitVerification;
    }
    return kExitOk;
}

inline int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace udg::cli
