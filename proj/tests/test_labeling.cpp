#include <doctest.h>

#include "profdet/harness.hpp"
#include "profdet/labeling.hpp"
#include "support.hpp"

using namespace profdet;
using testing::qp;
using testing::word;

namespace {

LabeledTree qp_tree() {
    Nbw a = qp();
    return label_levels(profile_tree(a, word(a, "abb")), a.num_states());
}

}  // namespace

TEST_CASE("qp global labels") {
    LabeledTree t = qp_tree();
    REQUIRE(t.levels.size() == 4);
    const std::vector<std::vector<Label>> gl{{0}, {0, 1}, {0, 2}, {0, 3}};
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.levels[i].gl == gl[i]);
    CHECK(check_labeling_invariants(t).empty());
}

TEST_CASE("qp label sets") {
    LabeledTree t = qp_tree();
    CHECK(labels_of_class(t, 0, 0).empty());
    CHECK(labels_of_class(t, 1, 0) == std::vector<Label>{0});
    CHECK(labels_of_class(t, 1, 1).empty());
    CHECK(labels_of_class(t, 2, 0) == std::vector<Label>{0, 1});
    CHECK(labels_of_class(t, 2, 1).empty());
    CHECK(labels_of_class(t, 3, 0) == std::vector<Label>{0, 1, 2});
    CHECK(labels_of_class(t, 3, 1).empty());
    CHECK_THROWS_AS(labels_of_class(t, 4, 0), std::out_of_range);
}

TEST_CASE("qp label 0 is successful from level 2 on") {
    Nbw a = qp();
    LabeledTree t = label_levels(profile_tree(a, word(a, "abbbbbb")), a.num_states());
    CHECK(t.levels[1].successful.empty());
    for (std::size_t i = 2; i < t.levels.size(); ++i) {
        const auto& s = t.levels[i].successful;
        CHECK(std::find(s.begin(), s.end(), 0) != s.end());
    }
}

TEST_CASE("qp bounded labels") {
    LabeledTree t = qp_tree();
    CHECK(t.levels[2].lbl == std::vector<Label>{0, 2});
    CHECK(t.levels[2].good == std::vector<Label>{0});
    CHECK(t.levels[2].bad == std::vector<Label>{1});
    CHECK(t.levels[3].lbl == std::vector<Label>{0, 1});
    CHECK(t.levels[3].bad == std::vector<Label>{2});
}

TEST_CASE("a non-accepting chain never succeeds") {
    LabeledTree t = label_levels(profile_tree(testing::self_loop(false), Word(6, 0)), 1);
    for (const auto& l : t.levels) {
        CHECK(l.gl == std::vector<Label>{0});
        CHECK(l.successful.empty());
        CHECK(l.good.empty());
        CHECK(l.bad.empty());
    }
}

TEST_CASE("global labels match their definition") {
    std::size_t trees = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        GenSpec spec;
        spec.num_states = 2 + seed % 3;
        spec.density = 0.4;
        spec.accepting_fraction = 0.4;
        spec.seed = 1000 + seed;
        Nbw a = gen_nbw(spec);
        for (const auto& w : enumerate_lassos(2, 0, 7)) {
            if (w.period.size() != 7) continue;
            auto levels = profile_tree(a, w.period);
            LabeledTree t = label_levels(levels, a.num_states());
            auto oracle = testing::definitional_labels(levels);
            for (std::size_t i = 0; i < levels.size(); ++i) {
                CHECK(t.levels[i].gl == oracle.gl[i]);
                for (std::size_t k = 0; k < levels[i].width(); ++k)
                    CHECK(labels_of_class(t, i, k) == oracle.labels[i][k]);
            }
            auto msgs = check_labeling_invariants(t);
            CHECK_MESSAGE(msgs.empty(), (msgs.empty() ? "" : msgs.front()));
            ++trees;
        }
    }
    CHECK(trees == 80 * 128);
}

TEST_CASE("labeled trace lines") {
    Nbw a = qp();
    auto lines = labeled_trace_lines(a, qp_tree());
    REQUIRE(lines.size() == 7);
    CHECK(lines[4].rfind("level=2 rank=1 f=1 parent=1 states={p} gl=2 lbl=2 good={0} bad={1} succ={0}", 0) == 0);
}
