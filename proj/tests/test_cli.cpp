#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <filesystem>
#include <sstream>

#include "profdet/cli.hpp"
#include "support.hpp"

using namespace profdet;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string qp_path() { return testing::data_path("qp.nbw"); }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("profdet_test_" + name)).string();
}

}  // namespace

TEST_CASE("member") {
    CHECK(run({"member", "--in", qp_path(), "--word", "a;b"}).out == "accept\n");
    Run r = run({"member", "--in", qp_path(), "--word", ";b"});
    CHECK(r.out == "reject\n");
    CHECK(r.code == 0);
    CHECK(run({"member", "--in", qp_path(), "--word", "a;b", "--via", "safra"}).out == "accept\n");
    CHECK(run({"member", "--in", qp_path(), "--word", "a;b", "--via", "profile"}).out == "accept\n");
    CHECK(run({"member", "--in", testing::golden_path("qp_profile.drw"), "--word", "a;b"}).out == "accept\n");
    CHECK(run({"member", "--in", testing::golden_path("qp_safra.drw"), "--word", ";b"}).out == "reject\n");
}

TEST_CASE("determinize matches the golden bytes") {
    std::string out = temp_path("qp.drw");
    Run r = run({"determinize", "--method", "profile", "--in", qp_path(), "--out", out});
    CHECK(r.code == 0);
    CHECK(testing::slurp(out) == testing::slurp(testing::golden_path("qp_profile.drw")));
    std::remove(out.c_str());
    CHECK(run({"determinize", "--method", "safra", "--in", qp_path()}).out ==
          testing::slurp(testing::golden_path("qp_safra.drw")));
    CHECK(run({"determinize", "--in", qp_path(), "--format", "hoa"}).out ==
          testing::slurp(testing::golden_path("qp_profile.hoa")));
}

TEST_CASE("trace with labels") {
    Run r = run({"trace", "--in", qp_path(), "--word", "a;b", "--levels", "4", "--labels"});
    CHECK(r.code == 0);
    CHECK(r.out.find("level=1 rank=0 f=0 parent=0 states={q} gl=0 lbl=0 good={} bad={} succ={} h=00 labels={0}") !=
          std::string::npos);
    CHECK(r.out.find("level=3 rank=0 f=0 parent=1 states={q} gl=0 lbl=0 good={0} bad={2} succ={0} h=0110 "
                     "labels={0,1,2}") != std::string::npos);
    CHECK(r.out.find("level=3 rank=1 f=1 parent=1 states={p} gl=3") != std::string::npos);
    CHECK(r.out.find("level=3 macrostate=<{q}^0 < {p}^1> cousin=[{q}<{p}] G={0} B={2}") != std::string::npos);
    CHECK(r.out.find("level=4") == std::string::npos);
}

TEST_CASE("gen and check") {
    Run g = run({"gen", "--states", "3", "--alphabet", "2", "--density", "0.5", "--acc", "0.3", "--seed", "42"});
    CHECK(g.out == testing::slurp(testing::golden_path("gen_n3_k2_d05_a03_s42.nbw")));

    std::string json = temp_path("report.json");
    Run c = run({"check", "--states", "3", "--count", "10", "--max-u", "1", "--max-v", "2", "--seed", "4", "--json", json});
    CHECK(c.code == 0);
    CHECK(c.out.find("PASS") != std::string::npos);
    CHECK(testing::slurp(json).find("\"pass\": true") != std::string::npos);
    std::remove(json.c_str());

    Run m = run({"check", "--states", "3", "--count", "10", "--max-u", "1", "--max-v", "2", "--seed", "4", "--mutate"});
    CHECK(m.code == kExitCheckFailed);
}

TEST_CASE("exit codes") {
    CHECK(run({"--version"}).out == std::string("profdet ") + kVersion + "\n");
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"determinize", "--bogus"}).code == kExitUsage);
    CHECK(run({"determinize", "--in", qp_path(), "--format", "dot"}).code == kExitUsage);
    CHECK(run({"member", "--in", "/nonexistent/x.nbw", "--word", "a;b"}).code == kExitUsage);
    CHECK(run({"member", "--in", qp_path(), "--word", "c;a"}).code == kExitUsage);

    std::string bad = temp_path("bad.nbw");
    {
        std::ofstream f(bad);
        f << "nbw\nalphabet: a\nstates: q\ninitial: r\n";
    }
    Run r = run({"determinize", "--in", bad});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("line 4") != std::string::npos);
    std::remove(bad.c_str());

    Run cap = run({"determinize", "--in", qp_path(), "--max-states", "2"});
    CHECK(cap.code == kExitResource);
    CHECK_FALSE(cap.err.empty());
}

TEST_CASE("outputs are byte-identical across runs") {
    std::vector<std::vector<std::string>> cmds{
        {"determinize", "--in", qp_path()},
        {"determinize", "--method", "safra", "--in", qp_path(), "--format", "hoa"},
        {"trace", "--in", qp_path(), "--word", "a;b", "--levels", "6", "--labels"},
        {"gen", "--states", "4", "--seed", "8"},
        {"check", "--states", "3", "--count", "5", "--max-u", "1", "--max-v", "2", "--seed", "8"},
    };
    for (const auto& c : cmds) CHECK(run(c).out == run(c).out);
}
