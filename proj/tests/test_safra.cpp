#include <doctest.h>

#include "profdet/harness.hpp"
#include "profdet/safra.hpp"
#include "support.hpp"

using namespace profdet;
using testing::qp;

TEST_CASE("initial trees") {
    Nbw a = qp();
    SafraTree t0 = safra_initial(a);
    CHECK(t0.root == 0u);
    CHECK(t0.nodes[0].label == StateSet{a.state_id("q")});
    CHECK(t0.bad == std::vector<NodeId>{1});
    CHECK(t0.good.empty());

    CHECK(safra_initial(testing::self_loop(false)).bad.empty());

    Nbw two({"a"}, {"x", "y"});
    two.set_initial({0, 1});
    CHECK(safra_initial(two).nodes[0].label == StateSet{0, 1});
}

TEST_CASE("qp first step spawns child 1") {
    Nbw a = qp();
    SafraTree t = safra_successor(a, safra_initial(a), a.symbol_id("a"));
    CHECK(format_safra(a, t) == "0{q,p}(1{p}) G={} B={1}");
    CHECK(validate_safra(t, 2).empty());
}

TEST_CASE("dead symbol empties the tree") {
    Nbw a = qp();
    SafraTree t = safra_successor(a, safra_initial(a), a.symbol_id("b"));
    CHECK(t.empty());
    CHECK(t.bad == std::vector<NodeId>{0, 1});
    SafraTree again = safra_successor(a, t, 0);
    CHECK(again.empty());
    CHECK(validate_safra(again, 2).empty());
}

TEST_CASE("covered node absorbs its children") {
    Nbw a = qp();
    SafraTree t = safra_successor(a, safra_initial(a), a.symbol_id("a"));
    SafraTree u = safra_successor(a, t, a.symbol_id("b"));
    CHECK(format_safra(a, u) == "0{q,p} G={0} B={1}");
}

TEST_CASE("new nodes are named in parent order") {
    // Root {x} with older child {y}; both x and y reach accepting z and w.
    Nbw a({"a"}, {"x", "y", "z", "w"});
    a.set_initial({0});
    a.set_accepting(2, true);
    a.set_accepting(3, true);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 0, 2);
    a.add_transition(1, 0, 1);
    a.add_transition(1, 0, 3);
    SafraTree t;
    t.nodes.assign(4, {});
    t.root = 0;
    t.nodes[0] = {true, {0, 1}, std::nullopt, {1}};
    t.nodes[1] = {true, {1}, 0, {}};
    REQUIRE(validate_safra(t, 4).empty());
    SafraTree u = safra_successor(a, t, 0);
    // Root spawns {z} (its label loses w to the older child 1), child 1 spawns {w}.
    CHECK(format_safra(a, u) == "0{x,y,z,w}(1{y,w}(3{w}) 2{z}) G={} B={2,3}");
    CHECK(validate_safra(u, 4).empty());
}

TEST_CASE("validate_safra flags malformed trees") {
    SafraTree t;
    t.nodes.assign(2, {});
    t.root = 0;
    t.nodes[0] = {true, {0}, std::nullopt, {1}};
    t.nodes[1] = {true, {0}, 0, {}};
    CHECK_FALSE(validate_safra(t, 2).empty());
}

TEST_CASE("safra agrees with the NBW on small automata") {
    Nbw f = qp();
    Drw d = determinize_safra(f);
    for (const auto& w : enumerate_lassos(2, 3, 4)) CHECK(drw_run_eval(d, w) == nbw_member(f, w));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenSpec spec;
        spec.num_states = 3;
        spec.seed = 77 + seed;
        spec.accepting_fraction = seed % 3 == 0 ? 0.0 : 0.4;
        Nbw a = gen_nbw(spec);
        SafraAutomaton sa = explore_safra(a);
        CHECK(sa.drw.acceptance.pairs.size() == 3);
        for (const auto& t : sa.trees) CHECK(validate_safra(t, 3).empty());
        for (const auto& w : enumerate_lassos(2, 3, 4)) CHECK(drw_run_eval(sa.drw, w) == nbw_member(a, w));
    }
}

TEST_CASE("deterministic Buchi input") {
    // Accept words with infinitely many b.
    Nbw a({"a", "b"}, {"n", "y"});
    a.set_initial({0});
    a.set_accepting(1, true);
    for (StateId q : {0u, 1u}) {
        a.add_transition(q, 0, 0);
        a.add_transition(q, 1, 1);
    }
    Drw d = determinize_safra(a);
    for (const auto& w : enumerate_lassos(2, 2, 3)) CHECK(drw_run_eval(d, w) == nbw_member(a, w));
}
