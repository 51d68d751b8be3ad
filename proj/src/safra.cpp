#include "profdet/safra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "profdet/error.hpp"
#include "profdet/explore.hpp"

namespace profdet {
namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

// Scratch node during a successor step. Original nodes keep their name; nodes
// spawned in this step carry no name until the final renaming.
struct WorkNode {
    std::optional<NodeId> name;
    StateSet label;
    std::size_t parent = none;
    std::vector<std::size_t> children;  // oldest first
    bool alive = true;
};

StateSet set_minus(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string set_text(const Nbw& a, const StateSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + a.state_name(s[i]);
    return out + "}";
}

}  // namespace

SafraTree safra_initial(const Nbw& a) {
    const std::size_t n = a.num_states();
    SafraTree t;
    t.nodes.assign(n, {});
    t.root = 0;
    t.nodes[0].present = true;
    t.nodes[0].label = a.initial();
    for (NodeId v = 1; v < n; ++v) t.bad.push_back(v);
    return t;
}

SafraTree safra_successor(const Nbw& a, const SafraTree& t, Symbol s) {
    if (s >= a.num_symbols()) throw SymbolError("symbol outside the alphabet");
    const std::size_t n = a.num_states();

    std::vector<WorkNode> work;
    std::size_t root = none;
    if (t.root) {
        // Copy the tree in preorder so parents precede children.
        std::function<std::size_t(NodeId, std::size_t)> copy = [&](NodeId v, std::size_t parent) {
            std::size_t idx = work.size();
            work.push_back({v, t.nodes[v].label, parent, {}, true});
            for (NodeId c : t.nodes[v].children) {
                std::size_t ci = copy(c, idx);
                work[idx].children.push_back(ci);
            }
            return idx;
        };
        root = copy(*t.root, none);
    }
    const std::size_t originals = work.size();

    // 1. Powerset step.
    for (auto& w : work) w.label = a.post(w.label, s);

    // 2. Spawn a youngest child holding the accepting states of each node.
    const StateSet accepting = a.accepting_states();
    for (std::size_t v = 0; v < originals; ++v) {
        StateSet acc;
        std::set_intersection(work[v].label.begin(), work[v].label.end(), accepting.begin(), accepting.end(),
                              std::back_inserter(acc));
        if (acc.empty()) continue;
        std::size_t idx = work.size();
        work.push_back({std::nullopt, std::move(acc), v, {}, true});
        work[v].children.push_back(idx);
    }

    // 3. A state in an older sibling is removed from a node and its subtree.
    if (root != none) {
        std::function<void(std::size_t, const StateSet&)> merge = [&](std::size_t v, const StateSet& removed) {
            work[v].label = set_minus(work[v].label, removed);
            StateSet older;
            for (std::size_t c : work[v].children) {
                StateSet before = work[c].label;
                merge(c, set_union(removed, older));
                older = set_union(older, before);
            }
        };
        merge(root, {});
    }

    // 4. Drop nodes with empty labels (their subtrees are empty too).
    for (auto& w : work)
        if (w.label.empty()) w.alive = false;
    auto kill_subtree = [&](std::size_t v) {
        std::vector<std::size_t> stack(work[v].children.begin(), work[v].children.end());
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            work[c].alive = false;
            stack.insert(stack.end(), work[c].children.begin(), work[c].children.end());
        }
    };
    for (std::size_t v = 0; v < work.size(); ++v)
        if (!work[v].alive) kill_subtree(v);

    // 5. Vertical merge, top-down: a node covered by its children absorbs them.
    std::vector<NodeId> good;
    if (root != none && work[root].alive) {
        std::function<void(std::size_t)> vertical = [&](std::size_t v) {
            StateSet covered;
            bool any = false;
            for (std::size_t c : work[v].children)
                if (work[c].alive) {
                    covered = set_union(covered, work[c].label);
                    any = true;
                }
            if (any && covered == work[v].label) {
                kill_subtree(v);
                good.push_back(*work[v].name);
                return;
            }
            for (std::size_t c : work[v].children)
                if (work[c].alive) vertical(c);
        };
        vertical(root);
    }

    // 6. Every name not carried by a surviving original node is bad.
    std::vector<bool> used(n, false);
    for (std::size_t v = 0; v < originals; ++v)
        if (work[v].alive) used[*work[v].name] = true;
    SafraTree out;
    out.nodes.assign(n, {});
    for (NodeId v = 0; v < n; ++v)
        if (!used[v]) out.bad.push_back(v);

    // 7. Name the new nodes with the smallest free names. Spawned nodes sit
    // after the originals in the order of their parents' preorder position.
    if (root == none || !work[root].alive) return out;
    for (std::size_t v = originals; v < work.size(); ++v) {
        if (!work[v].alive) continue;
        auto it = std::find(used.begin(), used.end(), false);
        if (it == used.end()) throw std::logic_error("Safra node names exhausted");
        *it = true;
        work[v].name = static_cast<NodeId>(it - used.begin());
    }

    out.root = *work[root].name;
    for (const auto& w : work) {
        if (!w.alive) continue;
        SafraNode& node = out.nodes[*w.name];
        node.present = true;
        node.label = w.label;
        if (w.parent != none) node.parent = *work[w.parent].name;
        for (std::size_t c : w.children)
            if (work[c].alive) node.children.push_back(*work[c].name);
    }
    std::sort(good.begin(), good.end());
    out.good = std::move(good);
    return out;
}

std::vector<std::string> validate_safra(const SafraTree& t, std::size_t num_states) {
    std::vector<std::string> out;
    if (t.nodes.size() != num_states) out.push_back("node table does not match |Q|");
    std::set<NodeId> bad(t.bad.begin(), t.bad.end());
    for (NodeId g : t.good)
        if (bad.count(g)) out.push_back("node both good and bad");
    if (!t.root) {
        for (const auto& node : t.nodes)
            if (node.present) out.push_back("rootless tree with nodes");
        return out;
    }
    std::vector<bool> reached(t.nodes.size(), false);
    std::function<void(NodeId)> visit = [&](NodeId v) {
        if (v >= t.nodes.size() || !t.nodes[v].present) {
            out.push_back("reference to a missing node");
            return;
        }
        if (reached[v]) {
            out.push_back("node reached twice");
            return;
        }
        reached[v] = true;
        const auto& node = t.nodes[v];
        if (node.label.empty()) out.push_back("empty node label");
        StateSet kids;
        for (NodeId c : node.children) {
            if (c >= t.nodes.size() || !t.nodes[c].present) {
                out.push_back("child is not a node");
                continue;
            }
            if (t.nodes[c].parent != v) out.push_back("parent link disagrees with child list");
            const auto& cl = t.nodes[c].label;
            StateSet overlap;
            std::set_intersection(kids.begin(), kids.end(), cl.begin(), cl.end(), std::back_inserter(overlap));
            if (!overlap.empty()) out.push_back("sibling labels intersect");
            kids = set_union(kids, cl);
        }
        if (!set_minus(kids, node.label).empty() || kids.size() >= node.label.size())
            out.push_back("label is not a proper superset of its children's labels");
        for (NodeId c : node.children)
            if (c < t.nodes.size() && t.nodes[c].present) visit(c);
    };
    if (t.nodes.at(*t.root).parent) out.push_back("root has a parent");
    visit(*t.root);
    for (std::size_t v = 0; v < t.nodes.size(); ++v)
        if (t.nodes[v].present && !reached[v]) out.push_back("node unreachable from the root");
    return out;
}

std::vector<std::uint32_t> key_of(const SafraTree& t) {
    std::vector<std::uint32_t> key;
    if (t.root) {
        std::function<void(NodeId)> emit = [&](NodeId v) {
            const auto& node = t.nodes[v];
            key.push_back(v);
            key.push_back(static_cast<std::uint32_t>(node.label.size()));
            key.insert(key.end(), node.label.begin(), node.label.end());
            key.push_back(static_cast<std::uint32_t>(node.children.size()));
            for (NodeId c : node.children) emit(c);
        };
        emit(*t.root);
    } else {
        key.push_back(static_cast<std::uint32_t>(-1));
    }
    for (const auto* set : {&t.good, &t.bad}) {
        key.push_back(static_cast<std::uint32_t>(set->size()));
        key.insert(key.end(), set->begin(), set->end());
    }
    return key;
}

std::string format_safra(const Nbw& a, const SafraTree& t) {
    std::ostringstream out;
    std::function<void(NodeId)> emit = [&](NodeId v) {
        const auto& node = t.nodes[v];
        out << v << set_text(a, node.label);
        if (node.children.empty()) return;
        out << "(";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i) out << " ";
            emit(node.children[i]);
        }
        out << ")";
    };
    if (t.root) emit(*t.root);
    else out << "-";
    auto ids = [](const std::vector<NodeId>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "}";
    };
    out << " G=" << ids(t.good) << " B=" << ids(t.bad);
    return out.str();
}

SafraAutomaton explore_safra(const Nbw& a, const DeterminizeOptions& opts) {
    auto explored = explore(
        safra_initial(a), a.num_symbols(),
        [&](const SafraTree& t, std::size_t s) { return safra_successor(a, t, static_cast<Symbol>(s)); },
        [](const SafraTree& t) { return key_of(t); }, opts.max_states);

    SafraAutomaton out;
    Drw& d = out.drw;
    d.alphabet = a.alphabet();
    d.initial = 0;
    d.delta = std::move(explored.delta);
    for (std::size_t i = 0; i < explored.states.size(); ++i) {
        d.state_names.push_back("t" + std::to_string(i));
        d.descriptions.push_back(format_safra(a, explored.states[i]));
    }
    for (NodeId v = 0; v < a.num_states(); ++v) {
        RabinPair pair;
        for (std::size_t i = 0; i < explored.states.size(); ++i) {
            const auto& t = explored.states[i];
            if (std::binary_search(t.good.begin(), t.good.end(), v)) pair.good.push_back(i);
            if (std::binary_search(t.bad.begin(), t.bad.end(), v)) pair.bad.push_back(i);
        }
        d.acceptance.pairs.push_back(std::move(pair));
    }
    out.trees = std::move(explored.states);
    return out;
}

Drw determinize_safra(const Nbw& a, const DeterminizeOptions& opts) { return explore_safra(a, opts).drw; }

}  // namespace profdet
