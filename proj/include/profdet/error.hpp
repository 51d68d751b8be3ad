#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace profdet {

/// Malformed input document. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A word or query mentions a symbol outside the automaton's alphabet.
class SymbolError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exploration hit its configured state budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace profdet
