#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "profdet/automata.hpp"

namespace profdet {

/// Parameters of the random NBW generator.
struct GenSpec {
    std::size_t num_states = 3;
    std::size_t alphabet_size = 2;
    double density = 0.4;             // probability of each (q, s, q′) edge, in (0, 1]
    double accepting_fraction = 0.3;  // probability that a non-initial state accepts
    std::uint64_t seed = 0;
};

/// Seed-deterministic random NBW: states q0.., symbols a, b, ...; q0 is the only
/// initial state and is never accepting. Identical across platforms (the
/// generator does not go through std:: distributions).
Nbw gen_nbw(const GenSpec& spec);

/// All lassos (u, v) with |u| ≤ max_u and 1 ≤ |v| ≤ max_v, ordered by |u|,
/// then u, then |v|, then v (length-lexicographic on each component).
std::vector<Lasso> enumerate_lassos(std::size_t alphabet_size, std::size_t max_u, std::size_t max_v);

/// Profile-rank oracle: enumerates every initial path on `word`, takes the
/// lexicographically largest profile per node, and compares the induced
/// preorder and pruned parents with the run DAG. Exponential; small inputs only.
std::vector<std::string> check_profiles_by_paths(const Nbw& a, const Word& word);

/// Runs the run DAG, labeling, and macrostate sequence along `word` and checks
/// their invariants and their level-by-level correspondence.
std::vector<std::string> check_word(const Nbw& a, const Word& word);

struct CheckConfig {
    GenSpec gen;                     // gen.num_states is the largest size
    std::size_t min_states = 2;
    std::size_t count = 1000;
    std::size_t max_u = 3;
    std::size_t max_v = 4;
    std::size_t prefix_depth = 8;    // correspondence and lemma sweeps
    std::size_t path_oracle_depth = 6;
    std::size_t path_oracle_max_states = 4;
    std::size_t max_states = 1'000'000;
    /// Negative control: swap G and B of every Rabin pair of the profile DRW.
    bool mutate_profile = false;
};

struct Verdicts {
    bool nbw = false;
    bool profile = false;
    bool safra = false;
};

struct Disagreement {
    std::uint64_t seed = 0;
    std::size_t num_states = 0;
    std::string automaton;  // native format
    std::string lasso;
    Verdicts verdicts;
};

struct Violation {
    std::uint64_t seed = 0;
    std::string message;
};

struct CheckReport {
    std::size_t automata = 0;
    std::size_t lassos = 0;
    std::size_t words = 0;
    std::size_t macrostates_checked = 0;
    std::size_t safra_trees_checked = 0;
    std::size_t max_profile_states = 0;
    std::size_t max_safra_states = 0;
    /// Macrostates whose G and B intersect (informational).
    std::size_t good_bad_overlaps = 0;
    std::size_t resource_failures = 0;
    std::size_t max_u = 0;
    std::size_t max_v = 0;
    std::size_t prefix_depth = 0;
    std::vector<Disagreement> disagreements;
    std::vector<Violation> violations;

    bool pass() const { return disagreements.empty() && violations.empty() && resource_failures == 0; }
    void merge(const CheckReport& other);
    std::string to_json() const;
};

/// Seed of the j-th automaton in a corpus.
std::uint64_t corpus_seed(std::uint64_t base, std::size_t j);
/// Size of the j-th automaton in a corpus.
std::size_t corpus_states(const CheckConfig& cfg, std::size_t j);

/// All checks for a single automaton; `seed` only tags the report records.
CheckReport check_automaton(const Nbw& a, std::uint64_t seed, const CheckConfig& cfg);

/// Generates `cfg.count` automata and checks each one.
CheckReport cross_check(const CheckConfig& cfg);

}  // namespace profdet
