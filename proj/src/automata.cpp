#include "profdet/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <utility>

#include "profdet/error.hpp"

namespace profdet {

Nbw::Nbw(std::vector<std::string> alphabet, std::vector<std::string> states)
    : symbol_names_(std::move(alphabet)) {
    for (auto& name : states) add_state(std::move(name));
}

StateSet Nbw::accepting_states() const {
    StateSet out;
    for (StateId q = 0; q < num_states(); ++q)
        if (accepting_[q]) out.push_back(q);
    return out;
}

StateSet Nbw::post(const StateSet& from, Symbol s) const {
    StateSet out;
    for (StateId q : from) {
        const auto& succ = successors(q, s);
        out.insert(out.end(), succ.begin(), succ.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StateId Nbw::add_state(std::string name) {
    state_names_.push_back(std::move(name));
    accepting_.push_back(false);
    succ_.emplace_back(num_symbols());
    return static_cast<StateId>(state_names_.size() - 1);
}

void Nbw::set_initial(StateSet initial) {
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    for (StateId q : initial)
        if (q >= num_states()) throw std::out_of_range("initial state id out of range");
    initial_ = std::move(initial);
}

void Nbw::set_accepting(StateId q, bool accepting) { accepting_.at(q) = accepting; }

void Nbw::add_transition(StateId src, Symbol s, StateId dst) {
    if (dst >= num_states()) throw std::out_of_range("transition target out of range");
    auto& succ = succ_.at(src).at(s);
    auto it = std::lower_bound(succ.begin(), succ.end(), dst);
    if (it == succ.end() || *it != dst) succ.insert(it, dst);
}

StateId Nbw::state_id(std::string_view name) const {
    auto it = std::find(state_names_.begin(), state_names_.end(), name);
    if (it == state_names_.end()) throw std::out_of_range("unknown state '" + std::string(name) + "'");
    return static_cast<StateId>(it - state_names_.begin());
}

Symbol Nbw::symbol_id(std::string_view name) const {
    auto it = std::find(symbol_names_.begin(), symbol_names_.end(), name);
    if (it == symbol_names_.end()) throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
    return static_cast<Symbol>(it - symbol_names_.begin());
}

bool Nbw::has_state(std::string_view name) const {
    return std::find(state_names_.begin(), state_names_.end(), name) != state_names_.end();
}

bool Nbw::has_symbol(std::string_view name) const {
    return std::find(symbol_names_.begin(), symbol_names_.end(), name) != symbol_names_.end();
}

bool Nbw::is_normalized() const {
    return std::none_of(initial_.begin(), initial_.end(), [&](StateId q) { return accepting_[q]; });
}

std::size_t Nbw::num_transitions() const {
    std::size_t n = 0;
    for (const auto& row : succ_)
        for (const auto& succ : row) n += succ.size();
    return n;
}

namespace {

std::string fresh_copy_name(const Nbw& a, const std::string& base) {
    std::string name = base + "^";
    while (a.has_state(name)) name += "^";
    return name;
}

void check_symbols(std::size_t alphabet_size, const Lasso& w) {
    if (w.period.empty()) throw std::invalid_argument("lasso period must be nonempty");
    auto bad = [&](Symbol s) { return s >= alphabet_size; };
    if (std::any_of(w.prefix.begin(), w.prefix.end(), bad) ||
        std::any_of(w.period.begin(), w.period.end(), bad))
        throw SymbolError("lasso symbol outside the alphabet");
}

}  // namespace

Nbw normalize(const Nbw& a) {
    if (a.is_normalized()) return a;
    Nbw out = a;
    StateSet initial;
    for (StateId q : a.initial()) {
        if (!a.is_accepting(q)) {
            initial.push_back(q);
            continue;
        }
        StateId copy = out.add_state(fresh_copy_name(out, a.state_name(q)));
        for (Symbol s = 0; s < a.num_symbols(); ++s)
            for (StateId dst : a.successors(q, s)) out.add_transition(copy, s, dst);
        initial.push_back(copy);
    }
    out.set_initial(std::move(initial));
    return out;
}

Symbol lasso_at(const Lasso& w, std::size_t i) {
    if (i < w.prefix.size()) return w.prefix[i];
    return w.period[(i - w.prefix.size()) % w.period.size()];
}

bool nbw_member(const Nbw& a, const Lasso& w) {
    check_symbols(a.num_symbols(), w);
    StateSet start = a.initial();
    for (Symbol s : w.prefix) start = a.post(start, s);

    // Product of the automaton with the period positions: node = q * p + i.
    const std::size_t p = w.period.size();
    const std::size_t nodes = a.num_states() * p;
    auto successors = [&](std::size_t node) {
        StateId q = static_cast<StateId>(node / p);
        std::size_t i = node % p;
        std::vector<std::size_t> out;
        for (StateId dst : a.successors(q, w.period[i])) out.push_back(dst * p + (i + 1) % p);
        return out;
    };

    std::vector<bool> reachable(nodes, false);
    std::deque<std::size_t> queue;
    for (StateId q : start) {
        reachable[q * p] = true;
        queue.push_back(q * p);
    }
    while (!queue.empty()) {
        std::size_t node = queue.front();
        queue.pop_front();
        for (std::size_t next : successors(node))
            if (!reachable[next]) {
                reachable[next] = true;
                queue.push_back(next);
            }
    }

    // An accepting lasso exists iff some reachable F-node lies on a cycle.
    for (std::size_t node = 0; node < nodes; ++node) {
        if (!reachable[node] || !a.is_accepting(static_cast<StateId>(node / p))) continue;
        std::vector<bool> seen(nodes, false);
        std::deque<std::size_t> todo{node};
        while (!todo.empty()) {
            std::size_t cur = todo.front();
            todo.pop_front();
            for (std::size_t next : successors(cur)) {
                if (next == node) return true;
                if (!seen[next]) {
                    seen[next] = true;
                    todo.push_back(next);
                }
            }
        }
    }
    return false;
}

bool drw_run_eval(const Drw& d, const Lasso& w) {
    check_symbols(d.alphabet.size(), w);
    std::size_t state = d.initial;
    for (Symbol s : w.prefix) state = d.delta.at(state).at(s);

    // Iterate the period until a (state, position) pair repeats.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_seen;
    std::vector<std::size_t> trace;
    std::size_t pos = 0;
    while (true) {
        auto [it, inserted] = first_seen.emplace(std::pair{state, pos}, trace.size());
        if (!inserted) {
            std::vector<std::size_t> cycle(trace.begin() + static_cast<std::ptrdiff_t>(it->second), trace.end());
            std::sort(cycle.begin(), cycle.end());
            cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
            auto hits = [&](const std::vector<std::size_t>& set) {
                return std::any_of(cycle.begin(), cycle.end(), [&](std::size_t s) {
                    return std::binary_search(set.begin(), set.end(), s);
                });
            };
            for (const auto& pair : d.acceptance.pairs)
                if (hits(pair.good) && !hits(pair.bad)) return true;
            return false;
        }
        trace.push_back(state);
        state = d.delta.at(state).at(w.period[pos]);
        pos = (pos + 1) % w.period.size();
    }
}

}  // namespace profdet
