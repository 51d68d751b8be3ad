#include "profdet/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "profdet/error.hpp"
#include "profdet/io.hpp"
#include "profdet/labeling.hpp"
#include "profdet/profile_det.hpp"
#include "profdet/run_dag.hpp"
#include "profdet/safra.hpp"

namespace profdet {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Minimal portable PRNG: splitmix64 stream, doubles from the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_++ * 0x2545f4914f6cdd1dULL + 1); }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

std::string symbol_name(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "s" + std::to_string(i);
}

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<Word> grown;
        for (const auto& w : out)
            for (Symbol s = 0; s < alphabet_size; ++s) {
                grown.push_back(w);
                grown.back().push_back(s);
            }
        out = std::move(grown);
    }
    return out;
}

std::string word_text(const Nbw& a, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "." : "") + a.symbol_name(w[i]);
    return out.empty() ? "ε" : out;
}

}  // namespace

Nbw gen_nbw(const GenSpec& spec) {
    std::vector<std::string> alphabet, states;
    for (std::size_t i = 0; i < spec.alphabet_size; ++i) alphabet.push_back(symbol_name(i));
    for (std::size_t i = 0; i < spec.num_states; ++i) states.push_back("q" + std::to_string(i));
    Nbw a(std::move(alphabet), std::move(states));
    Rng rng(spec.seed);
    a.set_initial({0});
    for (StateId q = 1; q < spec.num_states; ++q) a.set_accepting(q, rng.uniform() < spec.accepting_fraction);
    for (StateId q = 0; q < spec.num_states; ++q)
        for (Symbol s = 0; s < spec.alphabet_size; ++s)
            for (StateId r = 0; r < spec.num_states; ++r)
                if (rng.uniform() < spec.density) a.add_transition(q, s, r);
    return a;
}

std::vector<Lasso> enumerate_lassos(std::size_t alphabet_size, std::size_t max_u, std::size_t max_v) {
    std::vector<Lasso> out;
    for (std::size_t lu = 0; lu <= max_u; ++lu)
        for (const auto& u : all_words(alphabet_size, lu))
            for (std::size_t lv = 1; lv <= max_v; ++lv)
                for (const auto& v : all_words(alphabet_size, lv)) out.push_back({u, v});
    return out;
}

std::vector<std::string> check_profiles_by_paths(const Nbw& a, const Word& word) {
    std::vector<std::string> out;
    // best[i][q]: lexicographically largest profile of an initial path to ⟨q,i⟩.
    std::vector<std::map<StateId, std::string>> best(word.size() + 1);
    std::string profile;
    std::function<void(StateId, std::size_t)> walk = [&](StateId q, std::size_t i) {
        profile.push_back(a.is_accepting(q) ? '1' : '0');
        auto [it, fresh] = best[i].emplace(q, profile);
        if (!fresh && it->second < profile) it->second = profile;
        if (i < word.size())
            for (StateId r : a.successors(q, word[i])) walk(r, i + 1);
        profile.pop_back();
    };
    for (StateId q : a.initial()) walk(q, 0);

    auto dag = run_dag(a, word);
    for (std::size_t i = 0; i < dag.size(); ++i) {
        const auto& level = dag[i];
        auto msg = [&](const std::string& m) { out.push_back("word=" + word_text(a, word) + " level " + std::to_string(i) + ": " + m); };
        StateSet reached;
        for (const auto& [q, h] : best[i]) reached.push_back(q);
        if (reached != level.nodes()) {
            msg("node set differs from path enumeration");
            continue;
        }
        for (std::size_t x = 0; x < reached.size(); ++x)
            for (std::size_t y = 0; y < reached.size(); ++y) {
                const auto& hx = best[i][reached[x]];
                const auto& hy = best[i][reached[y]];
                std::size_t rx = level.order.ranks()[x], ry = level.order.ranks()[y];
                if ((hx < hy) != (rx < ry) || (hx == hy) != (rx == ry)) msg("rank order differs from profile order");
            }
        if (i == 0) continue;
        for (std::size_t j = 0; j < reached.size(); ++j) {
            StateId target = reached[j];
            std::string top;
            StateSet argmax;
            for (const auto& [q, h] : best[i - 1]) {
                const auto& succ = a.successors(q, word[i - 1]);
                if (!std::binary_search(succ.begin(), succ.end(), target)) continue;
                if (argmax.empty() || h > top) {
                    top = h;
                    argmax.clear();
                }
                if (h == top) argmax.push_back(q);
            }
            if (argmax != level.parents[j]) msg("pruned parents are not the profile-maximal predecessors");
        }
    }
    return out;
}

std::vector<std::string> check_word(const Nbw& a, const Word& word) {
    std::vector<std::string> out;
    const std::string tag = "word=" + word_text(a, word) + " ";
    auto add = [&](const std::vector<std::string>& msgs) {
        for (const auto& m : msgs) out.push_back(tag + m);
    };

    auto dag = run_dag(a, word);
    add(check_level_invariants(dag, a.num_states()));
    std::vector<ProfileLevel> levels;
    for (const auto& d : dag) levels.push_back(to_profile_level(d));
    auto tree = label_levels(levels, a.num_states());
    add(check_labeling_invariants(tree));

    Macrostate m = initial_macrostate(a);
    for (std::size_t i = 0; i <= word.size(); ++i) {
        if (i > 0) m = sigma_successor(a, m, word[i - 1]);
        for (const auto& v : validate_macrostate(m, a.num_states()))
            out.push_back(tag + "step " + std::to_string(i) + ": invalid macrostate: " + v);
        const LabeledLevel& L = tree.levels[i];
        auto mismatch = [&](const char* what) {
            out.push_back(tag + "step " + std::to_string(i) + ": macrostate " + what + " differs from the labeled tree");
        };
        if (m.classes != L.base.classes) mismatch("classes");
        if (m.labels != L.lbl) mismatch("labels");
        if (!(m.cousin == L.cousin)) mismatch("cousin relation");
        if (m.good != L.good) mismatch("good set");
        if (m.bad != L.bad) mismatch("bad set");
    }
    return out;
}

void CheckReport::merge(const CheckReport& o) {
    automata += o.automata;
    lassos += o.lassos;
    words += o.words;
    macrostates_checked += o.macrostates_checked;
    safra_trees_checked += o.safra_trees_checked;
    max_profile_states = std::max(max_profile_states, o.max_profile_states);
    max_safra_states = std::max(max_safra_states, o.max_safra_states);
    good_bad_overlaps += o.good_bad_overlaps;
    resource_failures += o.resource_failures;
    disagreements.insert(disagreements.end(), o.disagreements.begin(), o.disagreements.end());
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
}

std::string CheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass();
    j["bounds"] = {{"max_u", max_u}, {"max_v", max_v}, {"prefix_depth", prefix_depth}};
    j["automata"] = automata;
    j["lassos"] = lassos;
    j["words"] = words;
    j["macrostates_checked"] = macrostates_checked;
    j["safra_trees_checked"] = safra_trees_checked;
    j["max_profile_states"] = max_profile_states;
    j["max_safra_states"] = max_safra_states;
    j["good_bad_overlaps"] = good_bad_overlaps;
    j["resource_failures"] = resource_failures;
    j["disagreements"] = nlohmann::ordered_json::array();
    for (const auto& d : disagreements)
        j["disagreements"].push_back({{"seed", d.seed},
                                      {"states", d.num_states},
                                      {"automaton", d.automaton},
                                      {"lasso", d.lasso},
                                      {"verdicts", {{"nbw", d.verdicts.nbw}, {"profile", d.verdicts.profile}, {"safra", d.verdicts.safra}}}});
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations) j["violations"].push_back({{"seed", v.seed}, {"message", v.message}});
    return j.dump(2) + "\n";
}

std::uint64_t corpus_seed(std::uint64_t base, std::size_t j) { return splitmix64(base + j); }

std::size_t corpus_states(const CheckConfig& cfg, std::size_t j) {
    std::size_t lo = std::min(cfg.min_states, cfg.gen.num_states);
    return lo + j % (cfg.gen.num_states - lo + 1);
}

CheckReport check_automaton(const Nbw& a, std::uint64_t seed, const CheckConfig& cfg) {
    CheckReport r;
    r.automata = 1;
    r.max_u = cfg.max_u;
    r.max_v = cfg.max_v;
    r.prefix_depth = cfg.prefix_depth;
    auto violation = [&](const std::string& msg) { r.violations.push_back({seed, msg}); };

    DeterminizeOptions opts;
    opts.max_states = cfg.max_states;
    ProfileAutomaton profile;
    SafraAutomaton safra;
    try {
        profile = explore_profile(a, opts);
        safra = explore_safra(a, opts);
    } catch (const ResourceError& e) {
        ++r.resource_failures;
        violation(e.what());
        return r;
    }
    r.max_profile_states = profile.drw.num_states();
    r.max_safra_states = safra.drw.num_states();
    if (cfg.mutate_profile)
        for (auto& pair : profile.drw.acceptance.pairs) std::swap(pair.good, pair.bad);

    for (const auto& m : profile.macrostates) {
        ++r.macrostates_checked;
        for (const auto& v : validate_macrostate(m, a.num_states())) violation("invalid macrostate " + format_macrostate(a, m) + ": " + v);
        std::vector<Label> both;
        std::set_intersection(m.good.begin(), m.good.end(), m.bad.begin(), m.bad.end(), std::back_inserter(both));
        if (!both.empty()) ++r.good_bad_overlaps;
    }
    for (const auto& t : safra.trees) {
        ++r.safra_trees_checked;
        for (const auto& v : validate_safra(t, a.num_states())) violation("invalid Safra tree " + format_safra(a, t) + ": " + v);
    }

    for (const auto& w : enumerate_lassos(a.num_symbols(), cfg.max_u, cfg.max_v)) {
        ++r.lassos;
        Verdicts v{nbw_member(a, w), drw_run_eval(profile.drw, w), drw_run_eval(safra.drw, w)};
        if (v.nbw != v.profile || v.nbw != v.safra)
            r.disagreements.push_back({seed, a.num_states(), format_nbw(a), format_lasso(w, a.alphabet()), v});
    }

    for (const auto& word : all_words(a.num_symbols(), cfg.prefix_depth)) {
        ++r.words;
        for (const auto& v : check_word(a, word)) violation(v);
    }
    if (a.num_states() <= cfg.path_oracle_max_states)
        for (const auto& word : all_words(a.num_symbols(), cfg.path_oracle_depth))
            for (const auto& v : check_profiles_by_paths(a, word)) violation(v);
    return r;
}

CheckReport cross_check(const CheckConfig& cfg) {
    CheckReport total;
    total.max_u = cfg.max_u;
    total.max_v = cfg.max_v;
    total.prefix_depth = cfg.prefix_depth;
    for (std::size_t j = 0; j < cfg.count; ++j) {
        GenSpec spec = cfg.gen;
        spec.num_states = corpus_states(cfg, j);
        spec.seed = corpus_seed(cfg.gen.seed, j);
        total.merge(check_automaton(gen_nbw(spec), spec.seed, cfg));
    }
    return total;
}

}  // namespace profdet
