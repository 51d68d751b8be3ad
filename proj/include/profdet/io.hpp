#pragma once

#include <string>
#include <string_view>

#include "profdet/automata.hpp"

namespace profdet {

// Native line-based formats. `#` starts a comment, tokens are separated by
// whitespace:
//
//   nbw                              drw
//   alphabet: a b                    alphabet: a b
//   states: q p                      states: s0 s1
//   initial: q                       initial: s0
//   accepting: p                     trans: s0 a s1
//   trans: q a p                     pair: 0 G s1 | B s0
//
// Parse errors carry the offending line number.

Nbw parse_nbw(std::string_view text);
std::string format_nbw(const Nbw& a);

Drw parse_drw(std::string_view text);
std::string format_drw(const Drw& d);

/// HOA v1 export with state-based Rabin marks: pair j is Fin(2j)&Inf(2j+1).
/// Each alphabet symbol becomes one atomic proposition; an edge on symbol
/// `s` is labelled by the minterm where exactly that proposition holds.
std::string format_hoa(const Drw& d);

/// `"u;v"` with symbols separated by '.', e.g. `a;b` or `;a.b`.
Lasso parse_lasso(std::string_view text, const std::vector<std::string>& alphabet);
std::string format_lasso(const Lasso& w, const std::vector<std::string>& alphabet);

}  // namespace profdet
