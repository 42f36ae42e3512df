#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "udg/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = udg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("udg_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("gen writes deterministic instances and validates flags") {
    TempDir tmp;
    auto a = run_cli({"gen", "--n", "100", "--box", "10000010", "--threshold", "1000001",
                      "--seed", "7", "--out", tmp / "a.pts"});
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("udgdom-report/1") == 0);
    CHECK(a.out.find("n=100") != std::string::npos);
    auto b = run_cli({"gen", "--n", "100", "--box", "10000010", "--threshold", "1000001",
                      "--seed", "7", "--out", tmp / "b.pts"});
    CHECK(b.exit_code == 0);
    CHECK(slurp(tmp / "a.pts") == slurp(tmp / "b.pts"));
    auto inst = udg::read_points(tmp / "a.pts");
    CHECK(inst.n() == 100);

    auto bad = run_cli({"gen", "--n", "0", "--box", "100", "--threshold", "10", "--out",
                        tmp / "zero.pts"});
    CHECK(bad.exit_code == udg::cli::kExitUsage);

    auto missing = run_cli({"gen", "--n", "5"});
    CHECK(missing.exit_code == udg::cli::kExitUsage);
}

TEST_CASE("gen exports the bundled instances") {
    TempDir tmp;
    auto r = run_cli({"gen", "--builtin", "fig4", "--out", tmp / "fig4.pts"});
    CHECK(r.exit_code == 0);
    auto inst = udg::read_points(tmp / "fig4.pts");
    CHECK(inst.n() == 33);
    CHECK(inst.threshold() == 1000001);
    CHECK(inst.point(0) == udg::Point{0, 0});
    CHECK(run_cli({"gen", "--builtin", "fig9", "--out", tmp / "x.pts"}).exit_code ==
          udg::cli::kExitUsage);
}

TEST_CASE("solve pipeline on fig4") {
    TempDir tmp;
    REQUIRE(run_cli({"gen", "--builtin", "fig4", "--out", tmp / "fig4.pts"}).exit_code == 0);

    auto solve = run_cli({"solve", "--algo", "reduce44", "--input", tmp / "fig4.pts",
                          "--format", "points", "--out", tmp / "fig4.sol"});
    CHECK(solve.exit_code == 0);
    CHECK(solve.out.find("algo=reduce44") != std::string::npos);
    CHECK(solve.out.find("order=id") != std::string::npos);

    auto exact = run_cli({"solve", "--algo", "exact", "--input", tmp / "fig4.pts", "--cap", "6"});
    CHECK(exact.exit_code == 0);
    CHECK(exact.out.find("size=5") != std::string::npos);

    // geometric algorithms need coordinates
    udg::write_graph(tmp / "fig4.udgg", udg::build_adjacency(udg::read_points(tmp / "fig4.pts")));
    auto geo = run_cli({"solve", "--algo", "geo44", "--input", tmp / "fig4.udgg", "--format",
                        "graph"});
    CHECK(geo.exit_code == udg::cli::kExitUsage);

    auto bad_algo = run_cli({"solve", "--algo", "magic", "--input", tmp / "fig4.pts"});
    CHECK(bad_algo.exit_code == udg::cli::kExitUsage);
}

TEST_CASE("solve is byte-identical across repeated runs") {
    TempDir tmp;
    REQUIRE(run_cli({"gen", "--builtin", "fig4", "--out", tmp / "fig4.pts"}).exit_code == 0);
    for (const std::string algo : {"reduce44", "weak43", "geo44"}) {
        auto r1 = run_cli({"solve", "--algo", algo, "--input", tmp / "fig4.pts", "--order",
                           "seed:3", "--out", tmp / "s1.sol"});
        auto r2 = run_cli({"solve", "--algo", algo, "--input", tmp / "fig4.pts", "--order",
                           "seed:3", "--out", tmp / "s2.sol"});
        CHECK(r1.exit_code == 0);
        CHECK(r2.exit_code == 0);
        CHECK(slurp(tmp / "s1.sol") == slurp(tmp / "s2.sol"));
    }
}

TEST_CASE("verify checks solutions and reports failures") {
    TempDir tmp;
    REQUIRE(run_cli({"gen", "--builtin", "fig4", "--out", tmp / "fig4.pts"}).exit_code == 0);
    REQUIRE(run_cli({"solve", "--algo", "reduce44", "--input", tmp / "fig4.pts", "--out",
                     tmp / "good.sol"})
                .exit_code == 0);

    auto ok = run_cli({"verify", "--input", tmp / "fig4.pts", "--solution", tmp / "good.sol",
                       "--check", "dominating", "--check", "independent", "--check",
                       "irreducible"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("check irreducible: pass") != std::string::npos);

    // a maximal independent set with a reducible corona fails the
    // irreducibility check and names the offender
    REQUIRE(run_cli({"solve", "--algo", "mis5", "--input", tmp / "fig4.pts", "--order",
                     "id+late:0,1,2,3,4", "--out", tmp / "mis.sol"})
                .exit_code == 0);
    auto reducible = run_cli({"verify", "--input", tmp / "fig4.pts", "--solution",
                              tmp / "mis.sol", "--check", "irreducible"});
    CHECK(reducible.exit_code == udg::cli::kExitVerification);
    CHECK(reducible.out.find("check irreducible: fail") != std::string::npos);
    CHECK(reducible.out.find("core") != std::string::npos);

    // drop one vertex from a valid solution: domination breaks
    auto ids = udg::read_solution(tmp / "good.sol");
    ids.pop_back();
    {
        std::ofstream outf(tmp / "broken.sol");
        outf << "sol " << ids.size() << "\n";
        for (int v : ids) outf << v << "\n";
    }
    auto broken = run_cli({"verify", "--input", tmp / "fig4.pts", "--solution",
                           tmp / "broken.sol"});
    CHECK(broken.exit_code == udg::cli::kExitVerification);
    CHECK(broken.out.find("check dominating: fail") != std::string::npos);

    // out-of-range vertex id
    {
        std::ofstream outf(tmp / "range.sol");
        outf << "sol 1\n99\n";
    }
    auto range = run_cli({"verify", "--input", tmp / "fig4.pts", "--solution",
                          tmp / "range.sol"});
    CHECK(range.exit_code == udg::cli::kExitUsage);
}

TEST_CASE("ratio reaches the published lower bounds with adversarial search") {
    auto fig4 = run_cli({"ratio", "--algo", "reduce44", "--instances", "builtin:fig4",
                         "--oracle-cap", "6", "--search-adversarial", "40"});
    CHECK(fig4.exit_code == 0);
    CHECK(fig4.out.find("opt=5") != std::string::npos);
    CHECK(fig4.out.find("max_ratio=4.800000") != std::string::npos);
    CHECK(fig4.out.find("bound_respected=yes") != std::string::npos);

    auto fig6 = run_cli({"ratio", "--algo", "weak43", "--instances", "builtin:fig6",
                         "--oracle-cap", "8", "--search-adversarial", "200"});
    CHECK(fig6.exit_code == 0);
    CHECK(fig6.out.find("opt=8") != std::string::npos);
    CHECK(fig6.out.find("max_ratio=4.250000") != std::string::npos);

    auto mis = run_cli({"ratio", "--algo", "mis5", "--instances", "random:n25:count20:seed5"});
    CHECK(mis.exit_code == 0);
    CHECK(mis.out.find("bound_respected=yes") != std::string::npos);
}

TEST_CASE("ratio over an instance directory") {
    TempDir tmp;
    REQUIRE(run_cli({"gen", "--builtin", "fig4", "--out", tmp / "a.pts"}).exit_code == 0);
    REQUIRE(run_cli({"gen", "--n", "30", "--box", "5000", "--threshold", "1000", "--seed", "2",
                     "--out", tmp / "b.pts"})
                .exit_code == 0);
    auto r = run_cli({"ratio", "--algo", "reduce44", "--instances", tmp.dir.string()});
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);  // 2 instances + summary
}

TEST_CASE("bench runs at trivial sizes") {
    auto r = run_cli({"bench", "--algo", "reduce44", "--sizes", "10,20", "--seeds", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cmd=bench") != std::string::npos);
    CHECK(r.out.find("doubling_ratio=") != std::string::npos);
    auto g = run_cli({"bench", "--algo", "geo44", "--sizes", "10", "--seeds", "1"});
    CHECK(g.exit_code == 0);
}

TEST_CASE("help and unknown commands") {
    auto help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("udgdom") != std::string::npos);
    CHECK(run_cli({"frobnicate"}).exit_code == udg::cli::kExitUsage);
    CHECK(run_cli({}).exit_code == udg::cli::kExitUsage);
}
