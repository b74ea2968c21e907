#ifndef PCFGKIT_GRAMMAR_IO_HPP_
#define PCFGKIT_GRAMMAR_IO_HPP_

#include <stdexcept>
#include <string>

#include "pcfgkit/grammar.hpp"

namespace pcfgkit {

// Error with the 1-based input line where parsing failed (0 = whole input).
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

// Grammar text format:
//   start: S            (optional, first non-comment line; default start is ROOT)
//   LHS -> RHS1 [RHS2 ...] <prob>
// Terminals are single-quoted ('token', with \' and \\ escapes), nonterminals are
// bare identifiers over [A-Za-z0-9_@$^-]. '#' starts a comment; blank lines ignored.
Grammar parse_grammar(const std::string& text);
Grammar load_grammar(const std::string& path);

std::string format_grammar(const Grammar& g);
void save_grammar(const Grammar& g, const std::string& path);

// Shortest round-trip decimal form of a double (used everywhere output must be
// byte-stable).
std::string format_double(double value);

}  // namespace pcfgkit

#endif  // PCFGKIT_GRAMMAR_IO_HPP_
