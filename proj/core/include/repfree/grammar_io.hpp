#pragma once

#include <string>
#include <string_view>

#include "repfree/grammar.hpp"

namespace repfree {

// Text format for grammars, one item per line, `#` starts a comment:
//
//   start S0
//   S0 -> a X_1_1
//   T3 -> d
//
// The first content line names the start symbol; every later line is a rule.
// Terminals are single characters. Nonterminal and terminal sets are
// inferred from the rules in first-appearance order (start symbol first).
// Throws ParseError (with a 1-based line number) on malformed input or
// duplicate rules.
Grammar parse_grammar(std::string_view text);

// Inverse of parse_grammar, deterministic byte-for-byte: start line, then
// rules in order. parse_grammar(format_grammar(g)) reproduces g whenever
// every nonterminal of g is reachable from the rule list (unreferenced
// nonterminals have no place in the format and are dropped).
std::string format_grammar(const Grammar& g);

// Derivations serialize as the word `deriv` followed by 0-based rule
// indices: "deriv 0 3 5 2".
Derivation parse_derivation(std::string_view text);
std::string format_derivation(const Derivation& d);

// Equivalence files list one class per line as whitespace-separated
// nonterminal names; `#` comments and blank lines are skipped. Nonterminals
// appearing on no line are implicitly singleton classes.
Equivalence parse_equivalence(std::string_view text);
std::string format_equivalence(const Equivalence& eq);

}  // namespace repfree
