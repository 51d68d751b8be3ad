#include <doctest.h>

#include "profdet/error.hpp"
#include "profdet/profile_det.hpp"
#include "support.hpp"

using namespace profdet;

TEST_CASE("qp document parses into the two-state automaton") {
    Nbw a = testing::qp();
    CHECK(a.num_states() == 2);
    CHECK(a.alphabet() == std::vector<std::string>{"a", "b"});
    StateId q = a.state_id("q"), p = a.state_id("p");
    Symbol sa = a.symbol_id("a"), sb = a.symbol_id("b");
    CHECK(a.initial() == StateSet{q});
    CHECK(a.accepting_states() == StateSet{p});
    CHECK(a.successors(q, sa) == StateSet{0, 1});
    CHECK(a.successors(q, sb).empty());
    CHECK(a.successors(p, sa) == StateSet{p});
    CHECK(a.successors(p, sb) == StateSet{0, 1});
    CHECK(a.num_transitions() == 5);
}

TEST_CASE("zero transitions give an empty relation") {
    Nbw a = parse_nbw("nbw\nalphabet: a b\nstates: x y\ninitial: x\naccepting:\n");
    CHECK(a.num_transitions() == 0);
    for (StateId q = 0; q < 2; ++q)
        for (Symbol s = 0; s < 2; ++s) CHECK(a.successors(q, s).empty());
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_nbw(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("nbw\nalphabet: a\nstates: q\ninitial: q\ntrans: q a r\n") == 5);
    CHECK(line_of("nbw\nalphabet: a\nstates: q\ninitial: q\ntrans: q b q\n") == 5);
    CHECK(line_of("nbw\nalphabet: a\nstates: q\ninitial:\n") == 4);
    CHECK(line_of("# c\nnbw\nalphabet: a\nalphabet: b\nstates: q\ninitial: q\n") == 4);
    CHECK(line_of("nbw\nalphabet: a\nstates: q\ninitial: q\nfoo: 1\n") == 5);
    CHECK_THROWS_AS(parse_nbw("drw\n"), ParseError);
    CHECK_THROWS_AS(parse_nbw("nbw\nalphabet: a\ninitial: q\n"), ParseError);
}

TEST_CASE("nbw round trip") {
    Nbw a = testing::qp();
    CHECK(parse_nbw(format_nbw(a)) == a);
}

TEST_CASE("drw round trip and validation") {
    Drw d = determinize_profile(testing::qp());
    Drw back = parse_drw(format_drw(d));
    CHECK(back.state_names == d.state_names);
    CHECK(back.delta == d.delta);
    CHECK(back.acceptance == d.acceptance);
    CHECK(format_drw(back).find("trans:") != std::string::npos);

    CHECK_THROWS_AS(parse_drw("drw\nalphabet: a\nstates: s\ninitial: s\n"), ParseError);
    CHECK_THROWS_AS(parse_drw("drw\nalphabet: a\nstates: s\ninitial: s\ntrans: s a s\ntrans: s a s\n"), ParseError);
    CHECK_THROWS_AS(parse_drw("drw\nalphabet: a\nstates: s\ninitial: s\ntrans: s a s\npair: 1 G s | B\n"), ParseError);
    Drw ok = parse_drw("drw\nalphabet: a\nstates: s\ninitial: s\ntrans: s a s\npair: 0 G s | B\n");
    CHECK(drw_run_eval(ok, Lasso{{}, {0}}));
}

TEST_CASE("hoa export") {
    Drw d = parse_drw("drw\nalphabet: a b\nstates: s t\ninitial: s\n"
                      "trans: s a t\ntrans: s b s\ntrans: t a t\ntrans: t b s\npair: 0 G t | B s\n");
    std::string h = format_hoa(d);
    CHECK(h.rfind("HOA: v1\n", 0) == 0);
    CHECK(h.find("acc-name: Rabin 1\n") != std::string::npos);
    CHECK(h.find("Acceptance: 2 (Fin(0)&Inf(1))\n") != std::string::npos);
    CHECK(h.find("State: 0 \"s\" {0}") != std::string::npos);
    CHECK(h.find("State: 1 \"t\" {1}") != std::string::npos);
    CHECK(h.find("[0&!1] 1") != std::string::npos);
    CHECK(h.find("[!0&1] 0") != std::string::npos);

    d.acceptance.pairs.clear();
    CHECK(format_hoa(d).find("Acceptance: 0 f\n") != std::string::npos);
}

TEST_CASE("lasso syntax") {
    std::vector<std::string> ab{"a", "b"};
    CHECK(parse_lasso("a;b", ab) == Lasso{{0}, {1}});
    CHECK(parse_lasso(";a.b", ab) == Lasso{{}, {0, 1}});
    CHECK(format_lasso(Lasso{{0, 1}, {1}}, ab) == "a.b;b");
    CHECK_THROWS(parse_lasso("a", ab));
    CHECK_THROWS(parse_lasso("a;", ab));
    CHECK_THROWS(parse_lasso("c;a", ab));
}
