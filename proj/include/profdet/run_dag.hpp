#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "profdet/automata.hpp"
#include "profdet/orders.hpp"

namespace profdet {

/// One level of the pruned run DAG.
///
/// `order` ranks the level's nodes by profile; `parents[j]` lists the pruned
/// (E′) predecessors of node `order.carrier()[j]` on the previous level.
struct DagLevel {
    std::size_t index = 0;
    LinearPreorder<StateId> order;
    std::vector<bool> accepting;          // f-bit per node
    std::vector<StateSet> parents;        // empty on level 0
    std::vector<std::size_t> parent_rank; // rank of the parent class, level > 0

    const StateSet& nodes() const { return order.carrier(); }
    bool empty() const { return order.size() == 0; }
};

/// A level of the profile tree: classes in profile order with their parent
/// class on the previous level.
struct ProfileLevel {
    std::vector<StateSet> classes;
    std::vector<std::optional<std::size_t>> parent;  // nullopt on level 0
    std::vector<bool> f_class;

    std::size_t width() const { return classes.size(); }

    friend bool operator==(const ProfileLevel&, const ProfileLevel&) = default;
};

DagLevel initial_level(const Nbw& a);
/// Throws SymbolError for symbols outside the alphabet.
DagLevel step_level(const Nbw& a, const DagLevel& prev, Symbol s);
std::vector<DagLevel> run_dag(const Nbw& a, std::span<const Symbol> prefix);

ProfileLevel to_profile_level(const DagLevel& level);
/// Levels 0..|prefix| of the profile tree.
std::vector<ProfileLevel> profile_tree(const Nbw& a, std::span<const Symbol> prefix);

/// Profile string of class `rank` on level `level` (one 0/1 per level).
std::string class_profile(std::span<const ProfileLevel> levels, std::size_t level, std::size_t rank);

/// Structural checks on a finite run-DAG prefix: one parent class per node,
/// equal nodes have equal parents, F-purity of classes, width bound, binary
/// branching with distinct F-bits among siblings, and rank consistency with the
/// (parent rank, f) key. Violations are returned as messages.
std::vector<std::string> check_level_invariants(std::span<const DagLevel> levels, std::size_t num_states);

/// `level=<i> rank=<k> f=<0|1> parent=<k'|-> states={...}` per class.
std::vector<std::string> trace_lines(const Nbw& a, std::span<const ProfileLevel> levels);

}  // namespace profdet
