#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "profdet/automata.hpp"
#include "profdet/io.hpp"
#include "profdet/run_dag.hpp"

namespace testing {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string data_path(const std::string& name) { return std::string(PROFDET_TEST_DATA) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(PROFDET_GOLDEN) + "/" + name; }

inline profdet::Nbw qp() { return profdet::parse_nbw(slurp(data_path("qp.nbw"))); }

inline profdet::Word word(const profdet::Nbw& a, const std::string& letters) {
    profdet::Word w;
    for (char c : letters) w.push_back(a.symbol_id(std::string(1, c)));
    return w;
}

inline profdet::Lasso lasso(const profdet::Nbw& a, const std::string& u, const std::string& v) {
    return {word(a, u), word(a, v)};
}

/// One state `q` with an `a` self-loop.
inline profdet::Nbw self_loop(bool accepting) {
    profdet::Nbw a({"a"}, {"q"});
    a.set_initial({0});
    a.set_accepting(0, accepting);
    a.add_transition(0, 0, 0);
    return a;
}

// Global labels straight from their definition, walking classes in "before"
// order. A label m is valid for U on level i when first(m) lies on an earlier
// level and U is the minimal descendant of first(m) on level i.
struct DefinitionalLabels {
    std::vector<std::vector<std::size_t>> gl;                    // [level][rank]
    std::vector<std::vector<std::vector<std::size_t>>> labels;   // [level][rank]
};

inline bool descends(const std::vector<profdet::ProfileLevel>& t, std::size_t level, std::size_t rank,
                     std::size_t anc_level, std::size_t anc_rank) {
    if (level < anc_level) return false;
    while (level > anc_level) {
        rank = *t[level].parent[rank];
        --level;
    }
    return rank == anc_rank;
}

inline DefinitionalLabels definitional_labels(const std::vector<profdet::ProfileLevel>& t) {
    DefinitionalLabels out;
    std::vector<std::pair<std::size_t, std::size_t>> first;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out.gl.emplace_back();
        out.labels.emplace_back();
        for (std::size_t k = 0; k < t[i].width(); ++k) {
            std::vector<std::size_t> valid;
            for (std::size_t m = 0; m < first.size(); ++m) {
                auto [fl, fr] = first[m];
                if (fl >= i) continue;
                std::optional<std::size_t> lmd;
                for (std::size_t r = 0; r < t[i].width() && !lmd; ++r)
                    if (descends(t, i, r, fl, fr)) lmd = r;
                if (lmd == k) valid.push_back(m);
            }
            std::size_t g;
            if (!valid.empty()) {
                g = valid.front();
            } else {
                g = first.size();
                first.emplace_back(i, k);
            }
            out.gl.back().push_back(g);
            out.labels.back().push_back(std::move(valid));
        }
    }
    return out;
}

}  // namespace testing
