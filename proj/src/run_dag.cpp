#include "profdet/run_dag.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "profdet/error.hpp"

namespace profdet {

DagLevel initial_level(const Nbw& a) {
    DagLevel level;
    level.index = 0;
    const StateSet& init = a.initial();
    level.order = LinearPreorder<StateId>(init, std::vector<std::size_t>(init.size(), 0));
    for (StateId q : init) level.accepting.push_back(a.is_accepting(q));
    level.parents.assign(init.size(), {});
    level.parent_rank.assign(init.size(), 0);
    return level;
}

DagLevel step_level(const Nbw& a, const DagLevel& prev, Symbol s) {
    if (s >= a.num_symbols()) throw SymbolError("symbol outside the alphabet");
    const StateSet next = a.post(prev.nodes(), s);

    DagLevel level;
    level.index = prev.index + 1;
    std::vector<std::pair<std::size_t, bool>> keys;
    for (StateId target : next) {
        // E′ keeps only the edges from the ≼-maximal predecessor class.
        std::size_t best = 0;
        StateSet parents;
        for (std::size_t j = 0; j < prev.nodes().size(); ++j) {
            StateId q = prev.nodes()[j];
            const auto& succ = a.successors(q, s);
            if (!std::binary_search(succ.begin(), succ.end(), target)) continue;
            std::size_t r = prev.order.ranks()[j];
            if (parents.empty() || r > best) {
                best = r;
                parents.clear();
            }
            if (r == best) parents.push_back(q);
        }
        bool f = a.is_accepting(target);
        level.accepting.push_back(f);
        level.parents.push_back(std::move(parents));
        level.parent_rank.push_back(best);
        keys.emplace_back(best, f);
    }
    std::vector<std::size_t> idx(next.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto by_key = LinearPreorder<std::size_t>::by_key(idx, [&](std::size_t i) { return keys[i]; });
    level.order = LinearPreorder<StateId>(next, by_key.ranks());
    return level;
}

std::vector<DagLevel> run_dag(const Nbw& a, std::span<const Symbol> prefix) {
    std::vector<DagLevel> levels{initial_level(a)};
    for (Symbol s : prefix) levels.push_back(step_level(a, levels.back(), s));
    return levels;
}

ProfileLevel to_profile_level(const DagLevel& level) {
    ProfileLevel out;
    const std::size_t k = level.order.class_count();
    out.classes.assign(k, {});
    out.parent.assign(k, std::nullopt);
    out.f_class.assign(k, false);
    for (std::size_t j = 0; j < level.nodes().size(); ++j) {
        std::size_t r = level.order.ranks()[j];
        out.classes[r].push_back(level.nodes()[j]);
        out.f_class[r] = level.accepting[j];
        if (level.index > 0) out.parent[r] = level.parent_rank[j];
    }
    return out;
}

std::vector<ProfileLevel> profile_tree(const Nbw& a, std::span<const Symbol> prefix) {
    std::vector<ProfileLevel> out;
    for (const auto& level : run_dag(a, prefix)) out.push_back(to_profile_level(level));
    return out;
}

std::string class_profile(std::span<const ProfileLevel> levels, std::size_t level, std::size_t rank) {
    std::string h(level + 1, '0');
    for (std::size_t i = level + 1; i-- > 0;) {
        const auto& pl = levels[i];
        h[i] = pl.f_class.at(rank) ? '1' : '0';
        if (i > 0) rank = *pl.parent.at(rank);
    }
    return h;
}

std::vector<std::string> check_level_invariants(std::span<const DagLevel> levels, std::size_t num_states) {
    std::vector<std::string> out;
    auto report = [&](std::size_t i, const std::string& msg) {
        out.push_back("level " + std::to_string(i) + ": " + msg);
    };
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const DagLevel& level = levels[i];
        const auto& nodes = level.nodes();
        if (nodes.size() > num_states) report(i, "width exceeds the number of states");

        std::map<std::size_t, bool> class_f;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            auto [it, fresh] = class_f.emplace(level.order.ranks()[j], level.accepting[j]);
            if (!fresh && it->second != level.accepting[j]) report(i, "class mixes F and non-F nodes");
        }

        if (i == 0) {
            if (level.order.class_count() > 1) report(i, "root level has more than one class");
            continue;
        }
        const DagLevel& prev = levels[i - 1];
        std::map<std::size_t, std::size_t> parent_of_class;
        std::map<std::size_t, std::set<std::pair<std::size_t, bool>>> children;  // parent -> (child rank, f)
        std::vector<std::pair<std::pair<std::size_t, bool>, std::size_t>> key_rank;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const auto& parents = level.parents[j];
            if (parents.empty()) {
                report(i, "node without a parent");
                continue;
            }
            std::set<std::size_t> parent_classes;
            for (StateId p : parents) {
                if (!prev.order.contains(p)) {
                    report(i, "parent is not a node of the previous level");
                    continue;
                }
                parent_classes.insert(prev.order.rank_of(p));
            }
            if (parent_classes.size() != 1) {
                report(i, "node has parents in " + std::to_string(parent_classes.size()) + " classes");
                continue;
            }
            std::size_t pc = *parent_classes.begin();
            if (pc != level.parent_rank[j]) report(i, "recorded parent rank disagrees with parents");
            std::size_t r = level.order.ranks()[j];
            auto [it, fresh] = parent_of_class.emplace(r, pc);
            if (!fresh && it->second != pc) report(i, "equivalent nodes have different parent classes");
            children[pc].emplace(r, level.accepting[j]);
            key_rank.push_back({{pc, level.accepting[j]}, r});
        }
        for (const auto& [pc, kids] : children) {
            if (kids.size() > 2) report(i, "class has more than two children");
            if (kids.size() == 2 && kids.begin()->second == std::next(kids.begin())->second)
                report(i, "sibling classes share an F-bit");
        }
        bool ordered = true;
        for (const auto& [k1, r1] : key_rank)
            for (const auto& [k2, r2] : key_rank)
                ordered = ordered && (k1 < k2) == (r1 < r2) && (k1 == k2) == (r1 == r2);
        if (!ordered) report(i, "class order disagrees with (parent rank, f) order");
    }
    return out;
}

std::vector<std::string> trace_lines(const Nbw& a, std::span<const ProfileLevel> levels) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& pl = levels[i];
        for (std::size_t k = 0; k < pl.width(); ++k) {
            std::ostringstream line;
            line << "level=" << i << " rank=" << k << " f=" << (pl.f_class[k] ? 1 : 0) << " parent=";
            if (pl.parent[k]) line << *pl.parent[k];
            else line << "-";
            line << " states={";
            for (std::size_t j = 0; j < pl.classes[k].size(); ++j)
                line << (j ? "," : "") << a.state_name(pl.classes[k][j]);
            line << "}";
            out.push_back(line.str());
        }
    }
    return out;
}

}  // namespace profdet
