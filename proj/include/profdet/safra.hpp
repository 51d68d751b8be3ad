#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "profdet/automata.hpp"
#include "profdet/profile_det.hpp"

namespace profdet {

using NodeId = std::uint32_t;

struct SafraNode {
    bool present = false;
    StateSet label;
    std::optional<NodeId> parent;
    std::vector<NodeId> children;  // oldest first

    friend bool operator==(const SafraNode&, const SafraNode&) = default;
};

/// A Safra tree over node names V = {0, ..., n-1}. The tree without a root is
/// the rejecting sink reached when every run has died.
struct SafraTree {
    std::optional<NodeId> root;
    std::vector<SafraNode> nodes;  // indexed by node name, size n
    std::vector<NodeId> good;      // sorted
    std::vector<NodeId> bad;       // sorted

    bool empty() const { return !root.has_value(); }

    friend bool operator==(const SafraTree&, const SafraTree&) = default;
};

SafraTree safra_initial(const Nbw& a);

/// One step of Safra's construction: powerset, spawn, horizontal merge, drop
/// empty nodes, vertical merge, mark unused names bad, then name new nodes by
/// the smallest free ids in preorder.
SafraTree safra_successor(const Nbw& a, const SafraTree& t, Symbol s);

/// Tree well-formedness; returns violation messages.
std::vector<std::string> validate_safra(const SafraTree& t, std::size_t num_states);

std::vector<std::uint32_t> key_of(const SafraTree& t);
/// `0{q,p}(1{p}) G={} B={1}`; children in age order inside parentheses.
std::string format_safra(const Nbw& a, const SafraTree& t);

struct SafraAutomaton {
    Drw drw;
    std::vector<SafraTree> trees;
};

/// Explores all reachable Safra trees; one Rabin pair per node name.
SafraAutomaton explore_safra(const Nbw& a, const DeterminizeOptions& opts = {});
Drw determinize_safra(const Nbw& a, const DeterminizeOptions& opts = {});

}  // namespace profdet
