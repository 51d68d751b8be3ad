#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "profdet/orders.hpp"
#include "profdet/run_dag.hpp"

namespace profdet {

using Label = std::size_t;

/// Position of a class in a profile tree.
struct ClassCoord {
    std::size_t level = 0;
    std::size_t rank = 0;

    friend bool operator==(const ClassCoord&, const ClassCoord&) = default;
    friend auto operator<=>(const ClassCoord&, const ClassCoord&) = default;
};

/// A profile-tree level with its global labels `gl`, bounded labels `lbl`
/// (range 0..2|Q|), the minimal-cousin order over its classes, and the label
/// events that happened on entering it.
struct LabeledLevel {
    ProfileLevel base;
    std::vector<Label> gl;
    std::vector<Label> lbl;
    ClassRelation cousin;
    /// Minimal-cousin nephew of each class on the next level; empty on the
    /// last level of a tree, nullopt when all descendants died.
    std::vector<std::optional<std::size_t>> nephew;
    /// Classes of the previous level whose nephew is this class.
    std::vector<std::vector<std::size_t>> uncles;
    std::vector<Label> good;        // bounded labels, sorted
    std::vector<Label> bad;         // bounded labels, sorted
    std::vector<Label> successful;  // global labels, sorted
};

struct LabeledTree {
    std::size_t num_states = 0;
    std::vector<LabeledLevel> levels;
    /// first[m]: the first class carrying global label m.
    std::vector<ClassCoord> first;
};

/// Labels every level using only the previous level (no global lookback).
LabeledTree label_levels(std::span<const ProfileLevel> levels, std::size_t num_states);

/// The valid global labels of a class: labels m whose first class lies on an
/// earlier level and whose lexicographically minimal descendant on `level` is
/// this class. Throws std::out_of_range for bad coordinates.
std::vector<Label> labels_of_class(const LabeledTree& tree, std::size_t level, std::size_t rank);

/// Checks the labeling lemmas on a finite tree prefix; see labeling.cpp.
std::vector<std::string> check_labeling_invariants(const LabeledTree& tree);

/// Trace lines extended with `gl= lbl= good= bad= succ= h= labels=`.
std::vector<std::string> labeled_trace_lines(const Nbw& a, const LabeledTree& tree);

}  // namespace profdet
