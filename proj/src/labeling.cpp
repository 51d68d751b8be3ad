#include "profdet/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace profdet {
namespace {

std::vector<Label> sorted_unique(std::vector<Label> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::optional<std::size_t> find_label(const std::vector<Label>& labels, Label m) {
    auto it = std::find(labels.begin(), labels.end(), m);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

LabeledLevel root_level(const ProfileLevel& base, std::vector<ClassCoord>& first) {
    LabeledLevel out;
    out.base = base;
    if (base.width() > 0) {
        out.gl = {0};
        out.lbl = {0};
        first.push_back({0, 0});
    }
    out.cousin = ClassRelation::full(base.width());
    out.uncles.assign(base.width(), {});
    return out;
}

LabeledLevel next_level(LabeledLevel& prev, const ProfileLevel& base, std::size_t index,
                        std::size_t num_states, std::vector<ClassCoord>& first) {
    const std::size_t width = base.width();
    LabeledLevel out;
    out.base = base;
    out.uncles.assign(width, {});

    // lsf: the ≼-minimal child of any class W with U ⊴ W. Children are
    // scanned in rank order, so the first hit is the minimum.
    prev.nephew.assign(prev.base.width(), std::nullopt);
    for (std::size_t u = 0; u < prev.base.width(); ++u)
        for (std::size_t c = 0; c < width; ++c)
            if (prev.cousin.contains(u, *base.parent[c])) {
                prev.nephew[u] = c;
                out.uncles[c].push_back(u);
                break;
            }

    // Free bounded labels, ascending; fresh classes take them in ≼ order.
    std::vector<Label> free_labels;
    for (Label m = 0; m <= 2 * num_states; ++m)
        if (!find_label(prev.lbl, m)) free_labels.push_back(m);
    std::vector<std::size_t> fresh;
    for (std::size_t c = 0; c < width; ++c)
        if (out.uncles[c].empty()) fresh.push_back(c);
    if (fresh.size() > free_labels.size()) throw std::logic_error("bounded label pool exhausted");
    auto fresh_order = LinearPreorder<std::size_t>::by_key(fresh, [](std::size_t c) { return c; });
    auto fresh_lbl = minjection(fresh_order, std::span<const Label>(free_labels));

    out.gl.resize(width);
    out.lbl.resize(width);
    for (std::size_t c = 0; c < width; ++c) {
        if (!out.uncles[c].empty()) {
            std::size_t u = out.uncles[c].front();
            out.gl[c] = prev.gl[u];
            out.lbl[c] = prev.lbl[u];
        } else {
            out.gl[c] = first.size();
            first.push_back({index, c});
            out.lbl[c] = fresh_lbl.at(c);
        }
    }

    // U′ ⊴ W′ iff the class carrying gl(U′) on the previous level is a
    // minimal cousin of W′'s parent.
    out.cousin = ClassRelation::identity(width);
    for (std::size_t a = 0; a < width; ++a) {
        auto u = find_label(prev.gl, out.gl[a]);
        if (!u) continue;
        for (std::size_t b = 0; b < width; ++b)
            if (a != b && prev.cousin.contains(*u, *base.parent[b])) out.cousin.insert(a, b);
    }

    for (std::size_t c = 0; c < width; ++c) {
        // Successful: same label one level up, and either an F-child or a jump.
        auto ug = find_label(prev.gl, out.gl[c]);
        if (ug && (*base.parent[c] != *ug || base.f_class[c])) out.successful.push_back(out.gl[c]);
        auto ul = find_label(prev.lbl, out.lbl[c]);
        if (ul && (*base.parent[c] != *ul || base.f_class[c])) out.good.push_back(out.lbl[c]);
    }
    for (Label m : prev.lbl)
        if (!find_label(out.lbl, m)) out.bad.push_back(m);
    out.successful = sorted_unique(out.successful);
    out.good = sorted_unique(out.good);
    out.bad = sorted_unique(out.bad);
    return out;
}

/// Rank of the ancestor of class `rank` on level `to` (to ≤ from).
std::size_t ancestor(const LabeledTree& tree, std::size_t from, std::size_t rank, std::size_t to) {
    for (std::size_t i = from; i > to; --i) rank = *tree.levels[i].base.parent[rank];
    return rank;
}

std::string join(const std::vector<Label>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

}  // namespace

LabeledTree label_levels(std::span<const ProfileLevel> levels, std::size_t num_states) {
    LabeledTree tree;
    tree.num_states = num_states;
    if (levels.empty()) return tree;
    tree.levels.push_back(root_level(levels[0], tree.first));
    for (std::size_t i = 1; i < levels.size(); ++i)
        tree.levels.push_back(next_level(tree.levels.back(), levels[i], i, num_states, tree.first));
    return tree;
}

std::vector<Label> labels_of_class(const LabeledTree& tree, std::size_t level, std::size_t rank) {
    if (level >= tree.levels.size() || rank >= tree.levels[level].base.width())
        throw std::out_of_range("class coordinates out of range");
    std::vector<Label> out;
    for (Label m = 0; m < tree.first.size(); ++m) {
        const ClassCoord f = tree.first[m];
        if (f.level >= level) continue;
        // lmd(m, level): the smallest class on `level` descending from first(m).
        for (std::size_t r = 0; r < tree.levels[level].base.width(); ++r)
            if (ancestor(tree, level, r, f.level) == f.rank) {
                if (r == rank) out.push_back(m);
                break;
            }
    }
    return out;
}

// Checked per level:
//  - gl and lbl are injective, lbl stays within 0..2|Q|;
//  - the cousin relation is a partial order contained in the class order and
//    matches its definition (W descends from first(gl(U)));
//  - every class descends from first(gl(U)); first classes are the root or an
//    F-class with a sibling; a non-first label was present one level up;
//    smaller labels have earlier first classes;
//  - nephews equal the lexicographically minimal descendants found by forward
//    enumeration from first(gl(U));
//  - labels(U′) is empty iff U′ has no uncles, and gl(U′) follows the
//    definition through labels(U′);
//  - bounded labels track global labels one-to-one, so good = successful and
//    bad = vanished labels under that correspondence.
std::vector<std::string> check_labeling_invariants(const LabeledTree& tree) {
    std::vector<std::string> out;
    auto report = [&](std::size_t i, const std::string& msg) {
        out.push_back("level " + std::to_string(i) + ": " + msg);
    };
    const std::size_t max_label = 2 * tree.num_states;

    for (std::size_t m = 1; m < tree.first.size(); ++m)
        if (!(tree.first[m - 1] < tree.first[m])) report(tree.first[m].level, "label order disagrees with first-class order");

    for (std::size_t i = 0; i < tree.levels.size(); ++i) {
        const LabeledLevel& L = tree.levels[i];
        const std::size_t width = L.base.width();
        if (sorted_unique(L.gl).size() != width) report(i, "gl is not injective");
        if (sorted_unique(L.lbl).size() != width) report(i, "bounded labels are not injective");
        for (Label m : L.lbl)
            if (m > max_label) report(i, "bounded label out of range");
        if (L.cousin.size() != width || !L.cousin.is_partial_order() || !L.cousin.within_index_order())
            report(i, "cousin relation is not a partial order inside the class order");

        for (std::size_t u = 0; u < width; ++u) {
            const ClassCoord f = tree.first.at(L.gl[u]);
            if (f.level > i || ancestor(tree, i, u, f.level) != f.rank) report(i, "class does not descend from its first class");
            for (std::size_t w = 0; w < width && L.cousin.size() == width; ++w) {
                bool desc = f.level <= i && ancestor(tree, i, w, f.level) == f.rank;
                if (desc != L.cousin.contains(u, w)) report(i, "cousin relation disagrees with its definition");
            }
            if (f.level == i && f.rank == u && i > 0) {
                const auto& fb = L.base;
                bool sibling = false;
                for (std::size_t w = 0; w < width; ++w) sibling = sibling || (w != u && fb.parent[w] == fb.parent[u]);
                if (!fb.f_class[u] || !sibling) report(i, "first class is neither the root nor an F-class with a sibling");
            }
            if (i > 0 && !(f.level == i && f.rank == u) && !find_label(tree.levels[i - 1].gl, L.gl[u]))
                report(i, "inherited label absent from the previous level");
        }

        if (i + 1 < tree.levels.size()) {
            for (std::size_t u = 0; u < width; ++u) {
                // Forward enumeration of first(gl(U))'s descendants down to level i+1.
                const ClassCoord f = tree.first[L.gl[u]];
                std::set<std::size_t> frontier{f.rank};
                for (std::size_t j = f.level + 1; j <= i + 1; ++j) {
                    std::set<std::size_t> grown;
                    const auto& lvl = tree.levels[j].base;
                    for (std::size_t c = 0; c < lvl.width(); ++c)
                        if (frontier.count(*lvl.parent[c])) grown.insert(c);
                    frontier = std::move(grown);
                }
                std::optional<std::size_t> lmd;
                if (!frontier.empty()) lmd = *frontier.begin();
                if (u >= L.nephew.size() || L.nephew[u] != lmd) report(i, "nephew differs from the minimal descendant");
            }
        }

        if (i == 0) continue;
        const LabeledLevel& P = tree.levels[i - 1];
        for (std::size_t c = 0; c < width; ++c) {
            auto labels = labels_of_class(tree, i, c);
            if (labels.empty() != L.uncles[c].empty()) report(i, "labels(U) empty disagrees with uncles(U) empty");
            std::vector<Label> via_uncles, present;
            for (std::size_t u : L.uncles[c]) via_uncles.push_back(P.gl[u]);
            for (Label m : labels)
                if (find_label(P.gl, m)) present.push_back(m);
            if (sorted_unique(via_uncles) != present) report(i, "labels on the previous level disagree with uncles");
            if (!labels.empty() && L.gl[c] != labels.front()) report(i, "gl is not the minimal valid label");
            if (labels.empty() && !(tree.first[L.gl[c]] == ClassCoord{i, c})) report(i, "fresh gl is not a new label");

            if (auto u = find_label(P.gl, L.gl[c])) {
                if (P.lbl[*u] != L.lbl[c]) report(i, "bounded label drifted from its global label");
            } else if (find_label(P.lbl, L.lbl[c])) {
                report(i, "fresh bounded label was in use on the previous level");
            }
        }
        std::vector<Label> mapped_success, mapped_bad;
        for (Label m : L.successful) mapped_success.push_back(L.lbl.at(*find_label(L.gl, m)));
        for (std::size_t u = 0; u < P.base.width(); ++u)
            if (!find_label(L.gl, P.gl[u])) mapped_bad.push_back(P.lbl[u]);
        if (sorted_unique(mapped_success) != L.good) report(i, "good labels do not match successful labels");
        if (sorted_unique(mapped_bad) != L.bad) report(i, "bad labels do not match vanished labels");
    }
    return out;
}

std::vector<std::string> labeled_trace_lines(const Nbw& a, const LabeledTree& tree) {
    std::vector<ProfileLevel> bases;
    for (const auto& L : tree.levels) bases.push_back(L.base);
    auto lines = trace_lines(a, bases);
    std::size_t line = 0;
    for (std::size_t i = 0; i < tree.levels.size(); ++i) {
        const auto& L = tree.levels[i];
        for (std::size_t k = 0; k < L.base.width(); ++k, ++line) {
            std::ostringstream ext;
            ext << " gl=" << L.gl[k] << " lbl=" << L.lbl[k] << " good=" << join(L.good) << " bad=" << join(L.bad)
                << " succ=" << join(L.successful) << " h=" << class_profile(bases, i, k)
                << " labels=" << join(labels_of_class(tree, i, k));
            lines[line] += ext.str();
        }
    }
    return lines;
}

}  // namespace profdet
