#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "profdet/error.hpp"

namespace profdet {

template <class State>
struct Explored {
    std::vector<State> states;                    // discovery (BFS) order, 0 = initial
    std::vector<std::vector<std::size_t>> delta;  // [state][symbol]
};

/// Breadth-first exploration of a deterministic successor function, memoized
/// on a canonical key. Symbols are tried in increasing order, so the state
/// numbering is a function of the input alone. Throws ResourceError once more
/// than `max_states` distinct states are discovered.
template <class State, class SuccFn, class KeyFn>
Explored<State> explore(State initial, std::size_t num_symbols, SuccFn successor, KeyFn key,
                        std::size_t max_states) {
    using Key = decltype(key(initial));
    Explored<State> out;
    std::map<Key, std::size_t> index;
    auto intern = [&](State s) {
        auto [it, fresh] = index.emplace(key(s), out.states.size());
        if (fresh) {
            if (out.states.size() >= max_states)
                throw ResourceError("state budget of " + std::to_string(max_states) + " exceeded");
            out.states.push_back(std::move(s));
            out.delta.emplace_back();
        }
        return it->second;
    };
    intern(std::move(initial));
    for (std::size_t cur = 0; cur < out.states.size(); ++cur) {
        std::vector<std::size_t> row;
        row.reserve(num_symbols);
        for (std::size_t s = 0; s < num_symbols; ++s) {
            State next = successor(out.states[cur], s);
            row.push_back(intern(std::move(next)));
        }
        out.delta[cur] = std::move(row);
    }
    return out;
}

}  // namespace profdet
