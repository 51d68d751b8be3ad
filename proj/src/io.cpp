#include "profdet/io.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "profdet/error.hpp"

namespace profdet {
namespace {

struct Directive {
    std::size_t line = 0;
    std::string key;
    std::vector<std::string> args;
};

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

/// Splits a document into its header word and `key: args` directives.
std::pair<std::string, std::vector<Directive>> lex(std::string_view text) {
    std::optional<std::string> header;
    std::vector<Directive> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (!header) {
            if (tokens.size() != 1) throw ParseError(lineno, "expected a format header");
            header = tokens[0];
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(lineno, "expected '<key>: ...'");
        auto key = split_ws(line.substr(0, colon));
        if (key.size() != 1) throw ParseError(lineno, "malformed directive key");
        out.push_back({lineno, key[0], split_ws(line.substr(colon + 1))});
    }
    if (!header) throw ParseError(0, "empty document");
    return {*header, std::move(out)};
}

void require_unique_names(const Directive& d) {
    std::set<std::string> seen;
    for (const auto& name : d.args)
        if (!seen.insert(name).second) throw ParseError(d.line, "duplicate name '" + name + "'");
}

/// Collects the single-occurrence list directives shared by both formats.
class Sections {
public:
    explicit Sections(const std::vector<Directive>& ds) {
        for (const auto& d : ds) {
            if (d.key == "trans" || d.key == "pair") continue;
            if (!single_.emplace(d.key, &d).second) throw ParseError(d.line, "repeated '" + d.key + ":' line");
        }
    }

    const Directive* find(const std::string& key) const {
        auto it = single_.find(key);
        return it == single_.end() ? nullptr : it->second;
    }

    const Directive& require(const std::string& key) const {
        if (auto* d = find(key)) return *d;
        throw ParseError(0, "missing '" + key + ":' line");
    }

    void reject_unknown(std::initializer_list<const char*> allowed) const {
        for (const auto& [key, d] : single_) {
            bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
            if (!ok) throw ParseError(d->line, "unknown directive '" + key + "'");
        }
    }

private:
    std::map<std::string, const Directive*> single_;
};

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += " " + n;
    return out;
}

}  // namespace

Nbw parse_nbw(std::string_view text) {
    auto [header, directives] = lex(text);
    if (header != "nbw") throw ParseError(0, "expected 'nbw' header, got '" + header + "'");
    Sections sec(directives);
    sec.reject_unknown({"alphabet", "states", "initial", "accepting"});

    const auto& alphabet = sec.require("alphabet");
    const auto& states = sec.require("states");
    require_unique_names(alphabet);
    require_unique_names(states);
    if (alphabet.args.empty()) throw ParseError(alphabet.line, "alphabet must be nonempty");
    if (states.args.empty()) throw ParseError(states.line, "state set must be nonempty");

    Nbw a(alphabet.args, states.args);
    auto state = [&](const Directive& d, const std::string& name) {
        if (!a.has_state(name)) throw ParseError(d.line, "undeclared state '" + name + "'");
        return a.state_id(name);
    };

    const auto& initial = sec.require("initial");
    if (initial.args.empty()) throw ParseError(initial.line, "initial set must be nonempty");
    StateSet init;
    for (const auto& name : initial.args) init.push_back(state(initial, name));
    a.set_initial(std::move(init));

    if (const auto* acc = sec.find("accepting"))
        for (const auto& name : acc->args) a.set_accepting(state(*acc, name), true);

    for (const auto& d : directives) {
        if (d.key == "pair") throw ParseError(d.line, "'pair:' lines belong to the drw format");
        if (d.key != "trans") continue;
        if (d.args.size() != 3) throw ParseError(d.line, "expected 'trans: <src> <sym> <dst>'");
        if (!a.has_symbol(d.args[1])) throw ParseError(d.line, "undeclared symbol '" + d.args[1] + "'");
        a.add_transition(state(d, d.args[0]), a.symbol_id(d.args[1]), state(d, d.args[2]));
    }
    return a;
}

std::string format_nbw(const Nbw& a) {
    std::ostringstream out;
    out << "nbw\n";
    out << "alphabet:" << join(a.alphabet()) << "\n";
    out << "states:" << join(a.state_names()) << "\n";
    out << "initial:";
    for (StateId q : a.initial()) out << " " << a.state_name(q);
    out << "\naccepting:";
    for (StateId q : a.accepting_states()) out << " " << a.state_name(q);
    out << "\n";
    for (StateId q = 0; q < a.num_states(); ++q)
        for (Symbol s = 0; s < a.num_symbols(); ++s)
            for (StateId dst : a.successors(q, s))
                out << "trans: " << a.state_name(q) << " " << a.symbol_name(s) << " " << a.state_name(dst) << "\n";
    return out.str();
}

Drw parse_drw(std::string_view text) {
    auto [header, directives] = lex(text);
    if (header != "drw") throw ParseError(0, "expected 'drw' header, got '" + header + "'");
    Sections sec(directives);
    sec.reject_unknown({"alphabet", "states", "initial"});

    const auto& alphabet = sec.require("alphabet");
    const auto& states = sec.require("states");
    require_unique_names(alphabet);
    require_unique_names(states);
    if (alphabet.args.empty()) throw ParseError(alphabet.line, "alphabet must be nonempty");
    if (states.args.empty()) throw ParseError(states.line, "state set must be nonempty");

    Drw d;
    d.alphabet = alphabet.args;
    d.state_names = states.args;
    d.descriptions.assign(d.state_names.size(), "");
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    d.delta.assign(d.state_names.size(), std::vector<std::size_t>(d.alphabet.size(), unset));

    auto index_of = [](const std::vector<std::string>& names, const std::string& n) -> std::optional<std::size_t> {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names.begin());
    };
    auto state = [&](const Directive& dir, const std::string& name) {
        auto idx = index_of(d.state_names, name);
        if (!idx) throw ParseError(dir.line, "undeclared state '" + name + "'");
        return *idx;
    };

    const auto& initial = sec.require("initial");
    if (initial.args.size() != 1) throw ParseError(initial.line, "a DRW has exactly one initial state");
    d.initial = state(initial, initial.args[0]);

    std::map<std::size_t, RabinPair> pairs;
    for (const auto& dir : directives) {
        if (dir.key == "trans") {
            if (dir.args.size() != 3) throw ParseError(dir.line, "expected 'trans: <src> <sym> <dst>'");
            auto sym = index_of(d.alphabet, dir.args[1]);
            if (!sym) throw ParseError(dir.line, "undeclared symbol '" + dir.args[1] + "'");
            auto& slot = d.delta[state(dir, dir.args[0])][*sym];
            if (slot != unset) throw ParseError(dir.line, "second transition for the same state and symbol");
            slot = state(dir, dir.args[2]);
        } else if (dir.key == "pair") {
            // pair: <idx> G <state>* | B <state>*
            const auto& args = dir.args;
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                if (args.empty()) throw std::invalid_argument("");
                idx = std::stoul(args[0], &used);
                if (used != args[0].size()) throw std::invalid_argument("");
            } catch (const std::logic_error&) {
                throw ParseError(dir.line, "expected a pair index");
            }
            auto bar = std::find(args.begin(), args.end(), "|");
            if (args.size() < 2 || args[1] != "G" || bar == args.end() || bar + 1 == args.end() || *(bar + 1) != "B")
                throw ParseError(dir.line, "expected 'pair: <idx> G <state>* | B <state>*'");
            RabinPair p;
            for (auto it = args.begin() + 2; it != bar; ++it) p.good.push_back(state(dir, *it));
            for (auto it = bar + 2; it != args.end(); ++it) p.bad.push_back(state(dir, *it));
            for (auto* set : {&p.good, &p.bad}) {
                std::sort(set->begin(), set->end());
                set->erase(std::unique(set->begin(), set->end()), set->end());
            }
            if (!pairs.emplace(idx, std::move(p)).second) throw ParseError(dir.line, "duplicate pair index");
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto it = pairs.find(i);
        if (it == pairs.end()) throw ParseError(0, "pair indices must be contiguous from 0");
        d.acceptance.pairs.push_back(std::move(it->second));
    }
    for (std::size_t q = 0; q < d.num_states(); ++q)
        for (std::size_t s = 0; s < d.alphabet.size(); ++s)
            if (d.delta[q][s] == unset)
                throw ParseError(0, "transition function is not total at state '" + d.state_names[q] + "'");
    return d;
}

std::string format_drw(const Drw& d) {
    std::ostringstream out;
    out << "drw\n";
    out << "alphabet:" << join(d.alphabet) << "\n";
    out << "states:" << join(d.state_names) << "\n";
    out << "initial: " << d.state_names.at(d.initial) << "\n";
    for (std::size_t q = 0; q < d.num_states(); ++q)
        if (q < d.descriptions.size() && !d.descriptions[q].empty())
            out << "# " << d.state_names[q] << " = " << d.descriptions[q] << "\n";
    for (std::size_t q = 0; q < d.num_states(); ++q)
        for (std::size_t s = 0; s < d.alphabet.size(); ++s)
            out << "trans: " << d.state_names[q] << " " << d.alphabet[s] << " " << d.state_names[d.delta[q][s]] << "\n";
    for (std::size_t j = 0; j < d.acceptance.pairs.size(); ++j) {
        const auto& p = d.acceptance.pairs[j];
        out << "pair: " << j << " G";
        for (auto q : p.good) out << " " << d.state_names[q];
        out << " | B";
        for (auto q : p.bad) out << " " << d.state_names[q];
        out << "\n";
    }
    return out.str();
}

std::string format_hoa(const Drw& d) {
    const std::size_t k = d.acceptance.pairs.size();
    std::ostringstream out;
    out << "HOA: v1\n";
    out << "States: " << d.num_states() << "\n";
    out << "Start: " << d.initial << "\n";
    out << "AP: " << d.alphabet.size();
    for (const auto& sym : d.alphabet) out << " \"" << sym << "\"";
    out << "\n";
    out << "acc-name: Rabin " << k << "\n";
    out << "Acceptance: " << 2 * k;
    if (k == 0) out << " f";
    for (std::size_t j = 0; j < k; ++j)
        out << (j == 0 ? " " : " | ") << "(Fin(" << 2 * j << ")&Inf(" << 2 * j + 1 << "))";
    out << "\n";
    out << "properties: deterministic state-acc\n";
    out << "--BODY--\n";
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        std::vector<std::size_t> marks;
        for (std::size_t j = 0; j < k; ++j) {
            const auto& p = d.acceptance.pairs[j];
            if (std::binary_search(p.bad.begin(), p.bad.end(), q)) marks.push_back(2 * j);
            if (std::binary_search(p.good.begin(), p.good.end(), q)) marks.push_back(2 * j + 1);
        }
        out << "State: " << q << " \"" << d.state_names[q] << "\"";
        if (!marks.empty()) {
            out << " {";
            for (std::size_t i = 0; i < marks.size(); ++i) out << (i ? " " : "") << marks[i];
            out << "}";
        }
        out << "\n";
        for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
            out << "[";
            for (std::size_t ap = 0; ap < d.alphabet.size(); ++ap)
                out << (ap ? "&" : "") << (ap == s ? "" : "!") << ap;
            out << "] " << d.delta[q][s] << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

Lasso parse_lasso(std::string_view text, const std::vector<std::string>& alphabet) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
        throw ParseError(0, "lasso must have the form '<u>;<v>'");
    auto symbols = [&](std::string_view part) {
        Word w;
        if (part.empty()) return w;
        std::size_t pos = 0;
        while (true) {
            std::size_t dot = part.find('.', pos);
            std::string_view tok = part.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
            auto it = std::find(alphabet.begin(), alphabet.end(), tok);
            if (it == alphabet.end()) throw SymbolError("unknown symbol '" + std::string(tok) + "' in lasso");
            w.push_back(static_cast<Symbol>(it - alphabet.begin()));
            if (dot == std::string_view::npos) break;
            pos = dot + 1;
        }
        return w;
    };
    Lasso w{symbols(text.substr(0, semi)), symbols(text.substr(semi + 1))};
    if (w.period.empty()) throw ParseError(0, "lasso period must be nonempty");
    return w;
}

std::string format_lasso(const Lasso& w, const std::vector<std::string>& alphabet) {
    auto part = [&](const Word& word) {
        std::string out;
        for (std::size_t i = 0; i < word.size(); ++i) out += (i ? "." : "") + alphabet.at(word[i]);
        return out;
    };
    return part(w.prefix) + ";" + part(w.period);
}

}  // namespace profdet
