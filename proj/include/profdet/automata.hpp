#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace profdet {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;
using StateSet = std::vector<StateId>;  // sorted, duplicate free
using Word = std::vector<Symbol>;

/// Nondeterministic Büchi word automaton with state-based acceptance.
///
/// States and symbols are dense ids in declaration order; the names are kept
/// only for I/O. The transition relation may be partial.
class Nbw {
public:
    Nbw() = default;
    Nbw(std::vector<std::string> alphabet, std::vector<std::string> states);

    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_symbols() const { return symbol_names_.size(); }

    const std::vector<std::string>& alphabet() const { return symbol_names_; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::string& state_name(StateId q) const { return state_names_.at(q); }
    const std::string& symbol_name(Symbol s) const { return symbol_names_.at(s); }

    const StateSet& initial() const { return initial_; }
    bool is_accepting(StateId q) const { return accepting_.at(q); }
    StateSet accepting_states() const;

    /// Successors of `q` on `s`, sorted.
    const StateSet& successors(StateId q, Symbol s) const { return succ_.at(q).at(s); }
    /// Image of a state set, sorted.
    StateSet post(const StateSet& from, Symbol s) const;

    StateId add_state(std::string name);
    void set_initial(StateSet initial);
    void set_accepting(StateId q, bool accepting);
    void add_transition(StateId src, Symbol s, StateId dst);

    /// Id lookups by name; throw std::out_of_range on unknown names.
    StateId state_id(std::string_view name) const;
    Symbol symbol_id(std::string_view name) const;
    bool has_state(std::string_view name) const;
    bool has_symbol(std::string_view name) const;

    /// True when no initial state is accepting.
    bool is_normalized() const;

    std::size_t num_transitions() const;

    friend bool operator==(const Nbw&, const Nbw&) = default;

private:
    std::vector<std::string> symbol_names_;
    std::vector<std::string> state_names_;
    StateSet initial_;
    std::vector<bool> accepting_;
    std::vector<std::vector<StateSet>> succ_;  // [state][symbol]
};

/// One Rabin pair over DRW state indices: accept when `good` recurs and `bad`
/// is visited finitely often.
struct RabinPair {
    std::vector<std::size_t> good;  // sorted
    std::vector<std::size_t> bad;   // sorted

    friend bool operator==(const RabinPair&, const RabinPair&) = default;
};

struct RabinCondition {
    std::vector<RabinPair> pairs;

    friend bool operator==(const RabinCondition&, const RabinCondition&) = default;
};

/// Deterministic Rabin word automaton with a total transition function.
struct Drw {
    std::vector<std::string> alphabet;
    std::vector<std::string> state_names;
    /// Optional human-readable payload per state (macrostate or Safra tree).
    std::vector<std::string> descriptions;
    std::size_t initial = 0;
    std::vector<std::vector<std::size_t>> delta;  // [state][symbol]
    RabinCondition acceptance;

    std::size_t num_states() const { return state_names.size(); }

    friend bool operator==(const Drw&, const Drw&) = default;
};

/// The ultimately periodic word prefix · period^ω.
struct Lasso {
    Word prefix;
    Word period;  // nonempty

    friend bool operator==(const Lasso&, const Lasso&) = default;
    friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

/// Replaces every initial accepting state by a fresh non-accepting copy with
/// the same outgoing transitions. Identity on automata that are already
/// normalized.
Nbw normalize(const Nbw& a);

/// Does some run of `a` on the lasso visit an accepting state infinitely often?
/// Throws SymbolError when the lasso uses a symbol outside the alphabet.
bool nbw_member(const Nbw& a, const Lasso& w);

/// Rabin acceptance of the unique run of `d` on the lasso.
bool drw_run_eval(const Drw& d, const Lasso& w);

/// Symbol `i` of prefix · period^ω.
Symbol lasso_at(const Lasso& w, std::size_t i);

}  // namespace profdet
