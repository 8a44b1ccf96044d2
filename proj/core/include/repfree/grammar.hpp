#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace repfree {

// A word over a grammar's terminal alphabet. Terminals are single
// characters, so a word is a plain string.
using Word = std::string;

// One production of a regular word grammar: either `lhs ::= terminal rhs`
// (a chain rule) or `lhs ::= terminal` (a final rule, rhs absent).
struct Rule {
  std::string lhs;
  char terminal = '\0';
  std::optional<std::string> rhs;

  bool operator==(const Rule&) const = default;
};

// A regular word grammar. Every rule emits exactly one terminal, so a
// derivation of a word takes exactly one step per symbol.
//
// `nonterminals` is kept in first-appearance order; that order defines the
// numbering used for equivalence classes and makes every search in this
// library deterministic. `rules` order is likewise significant: searches try
// rules in list order, and derivations refer to rules by index into it.
struct Grammar {
  std::vector<std::string> nonterminals;
  std::vector<char> terminals;
  std::vector<Rule> rules;
  std::string start;

  bool operator==(const Grammar&) const = default;
};

// A derivation, stored as indices into Grammar::rules. The chain is valid
// when step 0 applies to the start symbol and each later step applies to the
// rhs of its predecessor. A derivation is complete when its last step is a
// final rule; prefixes of derivations (every step a chain rule) are also
// representable, which some diagnostics rely on.
struct Derivation {
  std::vector<std::size_t> steps;

  bool operator==(const Derivation&) const = default;
};

// An equivalence on nonterminal names, given by its non-singleton classes
// (listing singletons explicitly is allowed, just redundant). Nonterminals
// not mentioned form singleton classes.
struct Equivalence {
  std::vector<std::vector<std::string>> classes;

  bool operator==(const Equivalence&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Maps every nonterminal of one grammar to a dense class id. Ids are
// assigned by first appearance in Grammar::nonterminals, so they are stable
// for a given grammar/equivalence pair.
struct ClassIndex {
  std::unordered_map<std::string, int> of;
  int count = 0;
};

// Structural checks: declared start symbol, rule symbols all declared,
// disjoint nonterminal/terminal names, no duplicate rules, names that
// survive the text format. Returns all violations instead of stopping at
// the first.
ValidationReport validate(const Grammar& g);

// Checks an equivalence against a grammar: classes must be nonempty,
// pairwise disjoint, and mention only declared nonterminals.
ValidationReport validate_equivalence(const Grammar& g, const Equivalence& eq);

// Identity partition: every nonterminal its own class.
ClassIndex make_class_index(const Grammar& g);

// Partition induced by `eq`; unmentioned nonterminals become singletons.
// Throws std::invalid_argument when `eq` fails validate_equivalence.
ClassIndex make_class_index(const Grammar& g, const Equivalence& eq);

// Runs the derivation and returns the emitted word (one terminal per step).
// Throws std::invalid_argument on out-of-range rule indices, a first step
// not applying to the start symbol, a broken chain, or a final rule in a
// non-final position.
Word replay(const Grammar& g, const Derivation& d);

// The nonterminals a derivation touches, in order: the start symbol, then
// the rhs of every chain step. A complete derivation of a word of length L
// therefore yields exactly L entries.
std::vector<std::string> occurring_nonterminals(const Grammar& g,
                                                const Derivation& d);

// True iff no nonterminal occurs twice in the derivation. The start symbol
// counts as occurring, so returning to it is a repetition.
bool is_repetition_free(const Grammar& g, const Derivation& d);

// Same, modulo an equivalence: no two occurring nonterminals may share a
// class. With the identity equivalence this is the plain predicate.
bool is_repetition_free(const Grammar& g, const Derivation& d,
                        const Equivalence& eq);

// Ordinary membership, repetitions allowed: is there any derivation of `w`?
// Sweeps a reachable-nonterminal set across the word, O(|w| * |rules|).
// The empty word is never derivable (every rule emits a terminal).
// Throws std::invalid_argument when `w` uses a symbol outside the alphabet.
bool derives(const Grammar& g, const Word& w);

struct EnumOptions {
  // enumerate_words refuses max_len above this; raise it deliberately when
  // a larger bound is really wanted.
  int max_len_guard = 20;
  // Abort with BudgetExceeded once this many (prefix, nonterminal) states
  // have been expanded.
  std::uint64_t state_cap = 1'000'000;
};

// All words of the language up to the given length, by breadth-first
// expansion of (prefix, nonterminal) states. Exact but exponential in the
// worst case, hence the guard and the state cap.
std::set<Word> enumerate_words(const Grammar& g, int max_len,
                               EnumOptions options = {});

// Convenience builder for tests and small programs: infers the nonterminal
// and terminal sets from `start` and the rules, in first-appearance order.
Grammar grammar_from_rules(std::string start, std::vector<Rule> rules);

// Index of the first rule matching (lhs, terminal, rhs), if any.
std::optional<std::size_t> find_rule(const Grammar& g, const std::string& lhs,
                                     char terminal,
                                     const std::optional<std::string>& rhs);

}  // namespace repfree
