#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "repfree/grammar.hpp"

namespace repfree {

enum class OnExceed {
  error,           // throw BudgetExceeded
  report_unknown,  // return Outcome::unknown
};

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  OnExceed on_exceed = OnExceed::error;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t suffix_prunes = 0;
  // Largest number of equivalence classes held visited at once.
  std::size_t max_visited = 0;
};

// Line-oriented "key=value" rendering of the stats.
std::string format_stats(const SearchStats& s);

// Searches report one of three outcomes. `unknown` means the node budget
// ran out first; it is never collapsed into `absent`.
enum class Outcome { found, absent, unknown };

struct DecideResult {
  Outcome outcome = Outcome::absent;
  std::optional<Derivation> witness;
  SearchStats stats;
};

// Is there a repetition-free derivation of `w`? Depth-first search over
// (position, nonterminal, visited classes), trying rules in grammar order,
// so the returned witness is deterministic. Two facts keep the search
// small: a step may only enter a class not yet visited, and a nonterminal
// that cannot derive the remaining suffix even with repetitions allowed is
// pruned via a precomputed table (disable with prune=false to cross-check).
// Throws std::invalid_argument for word symbols outside the alphabet.
DecideResult decide_repfree(const Grammar& g, const Word& w,
                            SearchBudget budget = {}, bool prune = true);

// Same question modulo an equivalence: no two visited nonterminals may
// share a class. decide_repfree is the identity-equivalence special case.
DecideResult decide_repfree_mod(const Grammar& g, const Equivalence& eq,
                                const Word& w, SearchBudget budget = {},
                                bool prune = true);

struct WordSearchResult {
  Outcome outcome = Outcome::absent;
  std::optional<std::pair<Word, Derivation>> witness;
  SearchStats stats;
};

// Is any word derivable repetition-free modulo `eq`? First-found word in
// depth-first rule order. Always terminates: each step must enter a fresh
// class, so derivation length is capped by the class count.
WordSearchResult exists_repfree_word_mod(const Grammar& g,
                                         const Equivalence& eq,
                                         SearchBudget budget = {});

// Reference decision procedure for cross-checking the solver: enumerate
// every derivation of `w` (no visited tracking, no pruning) and keep the
// first that passes is_repetition_free. Exponential; guarded to |w| <= 12
// (std::invalid_argument) and `node_guard` enumeration nodes
// (BudgetExceeded).
std::optional<Derivation> oracle_repfree(const Grammar& g, const Word& w,
                                         std::uint64_t node_guard = 10'000'000);

// The set of all repetition-free derivable words (modulo `eq` in the second
// form). Requires at most 34 equivalence classes, which caps word length at
// 35; throws std::invalid_argument beyond that and BudgetExceeded when the
// budget runs out (a partial set is never returned).
std::set<Word> enumerate_repfree_words(const Grammar& g,
                                       SearchBudget budget = {});
std::set<Word> enumerate_repfree_words(const Grammar& g, const Equivalence& eq,
                                       SearchBudget budget = {});

struct LongestWord {
  Word word;
  Derivation derivation;
};

// A longest repetition-free derivable word, optionally restricted to words
// containing `required_terminal`. Depth-first branch and bound, no
// memoization: a branch is cut when even spending every unvisited class
// cannot beat the incumbent. Ties keep the first word found in rule order.
// Returns nullopt when no (matching) word is derivable repetition-free;
// throws BudgetExceeded when the budget runs out.
std::optional<LongestWord> longest_repfree(
    const Grammar& g, std::optional<char> required_terminal = std::nullopt,
    SearchBudget budget = {});
std::optional<LongestWord> longest_repfree(
    const Grammar& g, const Equivalence& eq,
    std::optional<char> required_terminal = std::nullopt,
    SearchBudget budget = {});

}  // namespace repfree
