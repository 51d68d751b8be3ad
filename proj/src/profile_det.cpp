#include "profdet/profile_det.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "profdet/error.hpp"
#include "profdet/explore.hpp"

namespace profdet {
namespace {

bool contains(const std::vector<Label>& v, Label m) { return std::find(v.begin(), v.end(), m) != v.end(); }

std::string set_text(const Nbw& a, const StateSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + a.state_name(s[i]);
    return out + "}";
}

std::string label_text(const std::vector<Label>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

}  // namespace

StateSet Macrostate::states() const {
    StateSet out;
    for (const auto& c : classes) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

LinearPreorder<StateId> Macrostate::preorder() const {
    StateSet carrier = states();
    std::vector<std::size_t> ranks;
    for (StateId q : carrier) ranks.push_back(class_of(q));
    return LinearPreorder<StateId>(std::move(carrier), std::move(ranks));
}

std::size_t Macrostate::class_of(StateId q) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (std::binary_search(classes[c].begin(), classes[c].end(), q)) return c;
    throw std::out_of_range("state not in macrostate");
}

MacrostateKey key_of(const Macrostate& m) {
    MacrostateKey key;
    key.push_back(static_cast<std::uint32_t>(m.classes.size()));
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        key.push_back(static_cast<std::uint32_t>(m.classes[c].size()));
        key.insert(key.end(), m.classes[c].begin(), m.classes[c].end());
        key.push_back(static_cast<std::uint32_t>(m.labels[c]));
    }
    for (const auto& [x, y] : m.cousin.pairs()) {
        key.push_back(static_cast<std::uint32_t>(x));
        key.push_back(static_cast<std::uint32_t>(y));
    }
    key.push_back(static_cast<std::uint32_t>(-1));
    for (const auto* set : {&m.good, &m.bad}) {
        key.push_back(static_cast<std::uint32_t>(set->size()));
        for (Label l : *set) key.push_back(static_cast<std::uint32_t>(l));
    }
    return key;
}

Macrostate initial_macrostate(const Nbw& a) {
    Macrostate m;
    m.classes = {a.initial()};
    m.labels = {0};
    m.cousin = ClassRelation::full(1);
    return m;
}

std::map<StateId, std::size_t> restricted_step(const Nbw& a, const Macrostate& m, Symbol s) {
    if (s >= a.num_symbols()) throw SymbolError("symbol outside the alphabet");
    // Later classes are ≼-larger, so the last class with a σ-edge to a target wins.
    std::map<StateId, std::size_t> out;
    for (std::size_t c = 0; c < m.classes.size(); ++c)
        for (StateId q : m.classes[c])
            for (StateId target : a.successors(q, s)) out[target] = c;
    return out;
}

Macrostate sigma_successor(const Nbw& a, const Macrostate& m, Symbol s) {
    const auto source = restricted_step(a, m, s);
    Macrostate next;
    if (source.empty()) {
        next.cousin = ClassRelation(0);
        next.bad = m.labels;
        std::sort(next.bad.begin(), next.bad.end());
        return next;
    }

    // ≼′: order by (source class, F-bit of the target).
    std::vector<StateId> targets;
    for (const auto& [q, c] : source) targets.push_back(q);
    auto order = LinearPreorder<StateId>::by_key(targets, [&](StateId q) {
        return std::pair{source.at(q), a.is_accepting(q)};
    });
    next.classes = classes(order);
    const std::size_t width = next.classes.size();
    std::vector<std::size_t> parent(width);
    std::vector<bool> f(width);
    for (std::size_t c = 0; c < width; ++c) {
        parent[c] = source.at(next.classes[c].front());
        f[c] = a.is_accepting(next.classes[c].front());
    }

    // neph(q): the ≼′-minimal target whose parent r satisfies q ⋖ r.
    const std::size_t k = m.classes.size();
    std::vector<std::vector<std::size_t>> uncles(width);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t t = 0; t < width; ++t)
            if (m.cousin.contains(c, parent[t])) {
                uncles[t].push_back(c);
                break;
            }

    std::vector<Label> free_labels;
    for (Label l = 0; l <= 2 * a.num_states(); ++l)
        if (!contains(m.labels, l)) free_labels.push_back(l);
    std::vector<std::size_t> orphans;
    for (std::size_t t = 0; t < width; ++t)
        if (uncles[t].empty()) orphans.push_back(t);
    if (orphans.size() > free_labels.size()) throw std::logic_error("bounded label pool exhausted");
    auto orphan_order = LinearPreorder<std::size_t>::by_key(orphans, [](std::size_t t) { return t; });
    auto fresh = minjection(orphan_order, std::span<const Label>(free_labels));

    next.labels.resize(width);
    for (std::size_t t = 0; t < width; ++t)
        next.labels[t] = uncles[t].empty() ? fresh.at(t) : m.labels[uncles[t].front()];

    // q′ ⋖′ r′ iff q′ ≈′ r′ or some uncle of q′ is ⋖ the parent of r′.
    next.cousin = ClassRelation::identity(width);
    for (std::size_t x = 0; x < width; ++x)
        for (std::size_t y = 0; y < width; ++y)
            for (std::size_t u : uncles[x])
                if (m.cousin.contains(u, parent[y])) {
                    next.cousin.insert(x, y);
                    break;
                }

    for (std::size_t c = 0; c < k; ++c) {
        Label l = m.labels[c];
        auto it = std::find(next.labels.begin(), next.labels.end(), l);
        if (it == next.labels.end()) {
            next.bad.push_back(l);
            continue;
        }
        std::size_t t = static_cast<std::size_t>(it - next.labels.begin());
        if (f[t] || parent[t] != c) next.good.push_back(l);
    }
    std::sort(next.good.begin(), next.good.end());
    std::sort(next.bad.begin(), next.bad.end());
    return next;
}

std::vector<std::string> validate_macrostate(const Macrostate& m, std::size_t num_states) {
    std::vector<std::string> out;
    const std::size_t k = m.classes.size();
    std::set<StateId> seen;
    for (const auto& c : m.classes) {
        if (c.empty()) out.push_back("empty class");
        if (!std::is_sorted(c.begin(), c.end())) out.push_back("class members not sorted");
        for (StateId q : c) {
            if (q >= num_states) out.push_back("state id out of range");
            if (!seen.insert(q).second) out.push_back("state in two classes");
        }
    }
    if (m.labels.size() != k) {
        out.push_back("label count differs from class count");
    } else {
        std::set<Label> distinct(m.labels.begin(), m.labels.end());
        if (distinct.size() != k) out.push_back("labels do not characterize the classes");
        for (Label l : m.labels)
            if (l > 2 * num_states) out.push_back("label out of range");
    }
    if (m.cousin.size() != k) out.push_back("cousin relation has the wrong size");
    else {
        if (!m.cousin.is_partial_order()) out.push_back("cousin relation is not a partial order on classes");
        if (!m.cousin.within_index_order()) out.push_back("cousin relation is not contained in the preorder");
    }
    for (const auto* set : {&m.good, &m.bad})
        if (!std::is_sorted(set->begin(), set->end()) || std::adjacent_find(set->begin(), set->end()) != set->end())
            out.push_back("good/bad sets not sorted and unique");
    for (Label l : m.good)
        if (!contains(m.labels, l)) out.push_back("good label not in use");
    for (Label l : m.bad) {
        if (contains(m.labels, l)) out.push_back("bad label still in use");
        if (l > 2 * num_states) out.push_back("bad label out of range");
    }
    return out;
}

std::string format_macrostate(const Nbw& a, const Macrostate& m) {
    std::ostringstream out;
    out << "<";
    for (std::size_t c = 0; c < m.classes.size(); ++c)
        out << (c ? " < " : "") << set_text(a, m.classes[c]) << "^" << m.labels[c];
    out << "> cousin=[";
    bool first = true;
    for (const auto& [x, y] : m.cousin.pairs()) {
        if (x == y) continue;
        out << (first ? "" : " ") << set_text(a, m.classes[x]) << "<" << set_text(a, m.classes[y]);
        first = false;
    }
    out << "] G=" << label_text(m.good) << " B=" << label_text(m.bad);
    return out.str();
}

ProfileAutomaton explore_profile(const Nbw& a, const DeterminizeOptions& opts) {
    auto explored = explore(
        initial_macrostate(a), a.num_symbols(),
        [&](const Macrostate& m, std::size_t s) { return sigma_successor(a, m, static_cast<Symbol>(s)); },
        [](const Macrostate& m) { return key_of(m); }, opts.max_states);

    ProfileAutomaton out;
    Drw& d = out.drw;
    d.alphabet = a.alphabet();
    d.initial = 0;
    d.delta = std::move(explored.delta);
    for (std::size_t i = 0; i < explored.states.size(); ++i) {
        d.state_names.push_back("s" + std::to_string(i));
        d.descriptions.push_back(format_macrostate(a, explored.states[i]));
    }
    for (Label l = 0; l <= 2 * a.num_states(); ++l) {
        RabinPair pair;
        for (std::size_t i = 0; i < explored.states.size(); ++i) {
            if (contains(explored.states[i].good, l)) pair.good.push_back(i);
            if (contains(explored.states[i].bad, l)) pair.bad.push_back(i);
        }
        if (opts.prune_vacuous_pairs && pair.good.empty()) continue;
        d.acceptance.pairs.push_back(std::move(pair));
    }
    out.macrostates = std::move(explored.states);
    return out;
}

Drw determinize_profile(const Nbw& a, const DeterminizeOptions& opts) { return explore_profile(a, opts).drw; }

}  // namespace profdet
