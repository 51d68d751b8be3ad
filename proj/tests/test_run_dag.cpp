#include <doctest.h>

#include "profdet/error.hpp"
#include "profdet/harness.hpp"
#include "support.hpp"

using namespace profdet;
using testing::qp;
using testing::word;

TEST_CASE("initial level") {
    Nbw a = qp();
    auto l0 = to_profile_level(initial_level(a));
    CHECK(l0.classes == std::vector<StateSet>{{a.state_id("q")}});
    CHECK(l0.f_class == std::vector<bool>{false});

    Nbw two({"a"}, {"x", "y"});
    two.set_initial({0, 1});
    CHECK(to_profile_level(initial_level(two)).classes == std::vector<StateSet>{{0, 1}});

    DagLevel n = initial_level(normalize(testing::self_loop(true)));
    for (bool f : n.accepting) CHECK_FALSE(f);
}

TEST_CASE("qp levels 1 and 2") {
    Nbw a = qp();
    StateId q = a.state_id("q"), p = a.state_id("p");
    DagLevel l1 = step_level(a, initial_level(a), a.symbol_id("a"));
    CHECK(l1.nodes() == StateSet{q, p});
    CHECK(l1.order.rank_of(q) == 0);
    CHECK(l1.order.rank_of(p) == 1);

    DagLevel l2 = step_level(a, l1, a.symbol_id("b"));
    CHECK(l2.order.rank_of(q) == 0);
    CHECK(l2.order.rank_of(p) == 1);
    CHECK(l2.parent_rank == std::vector<std::size_t>{1, 1});
    for (const auto& par : l2.parents) CHECK(par == StateSet{p});
}

TEST_CASE("empty level stays empty") {
    Nbw a = qp();
    DagLevel dead = step_level(a, initial_level(a), a.symbol_id("b"));
    CHECK(dead.empty());
    CHECK(step_level(a, dead, a.symbol_id("a")).empty());
    CHECK_THROWS_AS(step_level(a, dead, 9), SymbolError);
}

TEST_CASE("qp profile tree on abb") {
    Nbw a = qp();
    auto t = profile_tree(a, word(a, "abb"));
    REQUIRE(t.size() == 4);
    const std::vector<std::vector<std::string>> h{{"0"}, {"00", "01"}, {"010", "011"}, {"0110", "0111"}};
    for (std::size_t i = 0; i < 4; ++i) {
        REQUIRE(t[i].width() == h[i].size());
        for (std::size_t k = 0; k < t[i].width(); ++k) CHECK(class_profile(t, i, k) == h[i][k]);
    }
    CHECK(t[3].classes == std::vector<StateSet>{{a.state_id("q")}, {a.state_id("p")}});
    CHECK(check_level_invariants(run_dag(a, word(a, "abb")), 2).empty());

    auto lines = trace_lines(a, t);
    CHECK(lines.front() == "level=0 rank=0 f=0 parent=- states={q}");
    CHECK(lines.back() == "level=3 rank=1 f=1 parent=1 states={p}");
}

TEST_CASE("empty prefix and single chains") {
    Nbw a = qp();
    CHECK(profile_tree(a, Word{}).size() == 1);

    auto chain = profile_tree(testing::self_loop(false), Word{0, 0, 0});
    REQUIRE(chain.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(chain[i].width() == 1);
    for (std::size_t i = 1; i < 4; ++i) CHECK(chain[i].parent[0] == 0u);
}

TEST_CASE("invariant checker flags corrupted parents") {
    Nbw a = qp();
    auto levels = run_dag(a, word(a, "ab"));
    CHECK(check_level_invariants(std::span<const DagLevel>{}, 2).empty());
    // Node q on level 2 gets predecessors from two different classes.
    auto& l2 = levels[2];
    l2.parents[0] = StateSet{a.state_id("q"), a.state_id("p")};
    CHECK_FALSE(check_level_invariants(levels, 2).empty());
}

TEST_CASE("width bound is enforced by the checker") {
    Nbw a = qp();
    auto levels = run_dag(a, word(a, "a"));
    CHECK_FALSE(check_level_invariants(levels, 1).empty());
}

TEST_CASE("ranks agree with brute-force path profiles") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GenSpec spec;
        spec.num_states = 2 + seed % 3;
        spec.density = 0.45;
        spec.accepting_fraction = 0.4;
        spec.seed = seed;
        Nbw a = gen_nbw(spec);
        for (const auto& w : enumerate_lassos(2, 0, 5)) {
            auto msgs = check_profiles_by_paths(a, w.period);
            CHECK_MESSAGE(msgs.empty(), "seed=" << seed << " " << (msgs.empty() ? "" : msgs.front()));
            CHECK(check_level_invariants(run_dag(a, w.period), a.num_states()).empty());
        }
    }
}
