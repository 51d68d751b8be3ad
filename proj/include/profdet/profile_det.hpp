#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "profdet/automata.hpp"
#include "profdet/labeling.hpp"
#include "profdet/orders.hpp"

namespace profdet {

/// A state of the profile-based deterministic automaton: a set of NBW states
/// with a linear preorder, one bounded label per class, the cousin relation
/// over classes, and the good/bad labels of the transition that produced it.
///
/// Classes are stored in preorder order with sorted members, which makes the
/// representation canonical: two macrostates are equal iff their fields are.
struct Macrostate {
    std::vector<StateSet> classes;
    std::vector<Label> labels;  // per class
    ClassRelation cousin;       // over class indices
    std::vector<Label> good;    // sorted
    std::vector<Label> bad;     // sorted

    StateSet states() const;
    LinearPreorder<StateId> preorder() const;
    /// Class index of `q`; throws std::out_of_range if q is not in S.
    std::size_t class_of(StateId q) const;
    Label label_of(StateId q) const { return labels[class_of(q)]; }
    bool empty() const { return classes.empty(); }

    friend bool operator==(const Macrostate&, const Macrostate&) = default;
};

/// Flat canonical encoding used for memoization.
using MacrostateKey = std::vector<std::uint32_t>;
MacrostateKey key_of(const Macrostate& m);

Macrostate initial_macrostate(const Nbw& a);

/// ρ restricted to edges leaving the ≼-maximal predecessor class: maps each
/// state of ρ(S, s) to the class index of its surviving predecessors.
std::map<StateId, std::size_t> restricted_step(const Nbw& a, const Macrostate& m, Symbol s);

/// The s-successor. An empty S′ yields the empty macrostate, whose B lists
/// every label that was live in `m`; it loops to the plain empty macrostate.
Macrostate sigma_successor(const Nbw& a, const Macrostate& m, Symbol s);

/// Structural validity of a macrostate over an automaton with `num_states`
/// states. Returns violation messages, empty when valid.
std::vector<std::string> validate_macrostate(const Macrostate& m, std::size_t num_states);

/// `<{q}^0 < {p}^1> cousin={q<p} G={} B={}`
std::string format_macrostate(const Nbw& a, const Macrostate& m);

struct DeterminizeOptions {
    std::size_t max_states = 1'000'000;
    /// Drop Rabin pairs whose G set is empty; they can never accept.
    bool prune_vacuous_pairs = true;
};

struct ProfileAutomaton {
    Drw drw;
    std::vector<Macrostate> macrostates;  // indexed like drw states
};

/// Explores all reachable macrostates. Throws ResourceError past the budget.
ProfileAutomaton explore_profile(const Nbw& a, const DeterminizeOptions& opts = {});
Drw determinize_profile(const Nbw& a, const DeterminizeOptions& opts = {});

}  // namespace profdet
