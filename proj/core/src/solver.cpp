#include "repfree/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "grammar_index.hpp"
#include "repfree/errors.hpp"

namespace repfree {

std::string format_stats(const SearchStats& s) {
  return "nodes_expanded=" + std::to_string(s.nodes_expanded) +
         "\nsuffix_prunes=" + std::to_string(s.suffix_prunes) +
         "\nmax_visited=" + std::to_string(s.max_visited) + "\n";
}

namespace {

using detail::CompiledRule;
using detail::GrammarIndex;
using detail::VisitedSet;

// Signals an exhausted budget in report_unknown mode; caught at the search
// entry points, never visible to callers.
struct Exhausted {};

struct BudgetCounter {
  const SearchBudget budget;
  SearchStats* stats;

  void tick(const char* what) {
    if (++stats->nodes_expanded <= budget.max_nodes) return;
    if (budget.on_exceed == OnExceed::report_unknown) throw Exhausted{};
    throw BudgetExceeded(std::string(what) + ": node budget of " +
                         std::to_string(budget.max_nodes) + " exceeded");
  }
};

void check_word_symbols(const GrammarIndex& gi, const Word& w) {
  for (char c : w) {
    if (!gi.is_terminal[static_cast<unsigned char>(c)]) {
      throw std::invalid_argument(std::string("word symbol '") + c +
                                  "' is not in the terminal alphabet");
    }
  }
}

// Depth-first search for a repetition-free derivation of w[pos..). A step
// may only enter an unvisited class; with `reach` present, continuations
// that cannot finish the suffix even with repetitions allowed are cut.
struct DecideSearch {
  const GrammarIndex& gi;
  const std::vector<int>& cls;
  const Word& w;
  const std::vector<std::vector<char>>* reach;  // null = pruning disabled
  BudgetCounter counter;
  VisitedSet visited;
  std::size_t visited_count = 0;
  std::vector<std::size_t> steps;

  bool dfs(int nt, std::size_t pos) {
    counter.tick("decide_repfree");
    counter.stats->max_visited = std::max(counter.stats->max_visited, visited_count);
    const bool last = pos + 1 == w.size();
    for (int ri : gi.rules_of[nt]) {
      const CompiledRule& r = gi.rules[ri];
      if (r.terminal != w[pos]) continue;
      if (r.rhs < 0) {
        if (!last) continue;
        steps.push_back(r.rule_index);
        return true;
      }
      if (last) continue;
      if (visited.test(cls[r.rhs])) continue;
      if (reach && !(*reach)[pos + 1][r.rhs]) {
        ++counter.stats->suffix_prunes;
        continue;
      }
      visited.set(cls[r.rhs]);
      ++visited_count;
      steps.push_back(r.rule_index);
      if (dfs(r.rhs, pos + 1)) return true;
      steps.pop_back();
      --visited_count;
      visited.clear(cls[r.rhs]);
    }
    return false;
  }
};

DecideResult decide_impl(const Grammar& g, const ClassIndex& ci, const Word& w,
                         SearchBudget budget, bool prune) {
  GrammarIndex gi(g);
  check_word_symbols(gi, w);
  DecideResult result;
  if (w.empty()) {
    result.outcome = Outcome::absent;
    return result;
  }
  std::vector<int> cls = detail::class_ids(gi, ci);
  // A repetition-free derivation enters a fresh class per step, so words
  // longer than class count + 1 are out of reach before searching.
  if (w.size() > static_cast<std::size_t>(ci.count) + 1) {
    result.outcome = Outcome::absent;
    return result;
  }
  std::vector<std::vector<char>> reach;
  if (prune) reach = detail::suffix_table(gi, w);

  DecideSearch search{gi,
                      cls,
                      w,
                      prune ? &reach : nullptr,
                      BudgetCounter{budget, &result.stats},
                      VisitedSet(ci.count),
                      0,
                      {}};
  search.visited.set(cls[gi.start]);
  search.visited_count = 1;
  try {
    if (search.dfs(gi.start, 0)) {
      result.outcome = Outcome::found;
      result.witness = Derivation{std::move(search.steps)};
    } else {
      result.outcome = Outcome::absent;
    }
  } catch (const Exhausted&) {
    result.outcome = Outcome::unknown;
  }
  return result;
}

}  // namespace

DecideResult decide_repfree(const Grammar& g, const Word& w,
                            SearchBudget budget, bool prune) {
  return decide_impl(g, make_class_index(g), w, budget, prune);
}

DecideResult decide_repfree_mod(const Grammar& g, const Equivalence& eq,
                                const Word& w, SearchBudget budget,
                                bool prune) {
  return decide_impl(g, make_class_index(g, eq), w, budget, prune);
}

namespace {

// Shared engine for the wordless searches: walks every repetition-free
// derivation in rule order and reports each completed word. `on_word`
// returns true to stop the whole search (used by first-found).
template <typename OnWord>
struct WordSearch {
  const GrammarIndex& gi;
  const std::vector<int>& cls;
  const int class_count;
  BudgetCounter counter;
  OnWord on_word;
  VisitedSet visited;
  std::size_t visited_count = 0;
  Word prefix;
  std::vector<std::size_t> steps;
  // Branch-and-bound hook: when set, returns true to cut the branch given
  // (current length, classes still unvisited).
  bool (*cut)(std::size_t len, std::size_t free_classes, const void* best) = nullptr;
  const void* cut_arg = nullptr;

  bool dfs(int nt) {
    counter.tick("repetition-free word search");
    counter.stats->max_visited = std::max(counter.stats->max_visited, visited_count);
    if (cut && cut(prefix.size(),
                   static_cast<std::size_t>(class_count) - visited_count,
                   cut_arg)) {
      return false;
    }
    for (int ri : gi.rules_of[nt]) {
      const CompiledRule& r = gi.rules[ri];
      if (r.rhs < 0) {
        prefix.push_back(r.terminal);
        steps.push_back(r.rule_index);
        bool stop = on_word(prefix, steps);
        steps.pop_back();
        prefix.pop_back();
        if (stop) return true;
        continue;
      }
      if (visited.test(cls[r.rhs])) continue;
      visited.set(cls[r.rhs]);
      ++visited_count;
      prefix.push_back(r.terminal);
      steps.push_back(r.rule_index);
      bool stop = dfs(r.rhs);
      steps.pop_back();
      prefix.pop_back();
      --visited_count;
      visited.clear(cls[r.rhs]);
      if (stop) return true;
    }
    return false;
  }
};

template <typename OnWord>
Outcome run_word_search(const Grammar& g, const ClassIndex& ci,
                        SearchBudget budget, SearchStats* stats,
                        OnWord on_word,
                        bool (*cut)(std::size_t, std::size_t, const void*) = nullptr,
                        const void* cut_arg = nullptr) {
  GrammarIndex gi(g);
  std::vector<int> cls = detail::class_ids(gi, ci);
  WordSearch<OnWord> search{gi,
                            cls,
                            ci.count,
                            BudgetCounter{budget, stats},
                            std::move(on_word),
                            VisitedSet(ci.count),
                            0,
                            {},
                            {},
                            cut,
                            cut_arg};
  search.visited.set(cls[gi.start]);
  search.visited_count = 1;
  try {
    return search.dfs(gi.start) ? Outcome::found : Outcome::absent;
  } catch (const Exhausted&) {
    return Outcome::unknown;
  }
}

void require_enumerable(const ClassIndex& ci) {
  if (ci.count > 34) {
    throw std::invalid_argument(
        "repetition-free enumeration is guarded to 34 equivalence classes; got " +
        std::to_string(ci.count));
  }
}

std::set<Word> enumerate_repfree_impl(const Grammar& g, const ClassIndex& ci,
                                      SearchBudget budget) {
  require_enumerable(ci);
  budget.on_exceed = OnExceed::error;  // a partial set would be misleading
  std::set<Word> words;
  SearchStats stats;
  run_word_search(g, ci, budget, &stats,
                  [&](const Word& w, const std::vector<std::size_t>&) {
                    words.insert(w);
                    return false;
                  });
  return words;
}

struct LongestState {
  std::optional<LongestWord> best;
  std::optional<char> required;
  std::size_t required_seen_depth = 0;  // how many required chars are in prefix
};

std::optional<LongestWord> longest_impl(const Grammar& g, const ClassIndex& ci,
                                        std::optional<char> required,
                                        SearchBudget budget) {
  budget.on_exceed = OnExceed::error;
  LongestState state;
  state.required = required;
  SearchStats stats;
  auto cut = [](std::size_t len, std::size_t free_classes, const void* arg) {
    const auto* st = static_cast<const LongestState*>(arg);
    // Even taking every unvisited class and then a final rule cannot beat
    // the incumbent.
    return st->best && len + free_classes < st->best->word.size();
  };
  run_word_search(
      g, ci, budget, &stats,
      [&](const Word& w, const std::vector<std::size_t>& steps) {
        bool ok = !state.required || w.find(*state.required) != Word::npos;
        if (ok && (!state.best || w.size() > state.best->word.size())) {
          state.best = LongestWord{w, Derivation{steps}};
        }
        return false;
      },
      +cut, &state);
  return state.best;
}

}  // namespace

WordSearchResult exists_repfree_word_mod(const Grammar& g,
                                         const Equivalence& eq,
                                         SearchBudget budget) {
  WordSearchResult result;
  result.outcome = run_word_search(
      g, make_class_index(g, eq), budget, &result.stats,
      [&](const Word& w, const std::vector<std::size_t>& steps) {
        result.witness = {w, Derivation{steps}};
        return true;  // first found wins
      });
  return result;
}

std::set<Word> enumerate_repfree_words(const Grammar& g, SearchBudget budget) {
  return enumerate_repfree_impl(g, make_class_index(g), budget);
}

std::set<Word> enumerate_repfree_words(const Grammar& g, const Equivalence& eq,
                                       SearchBudget budget) {
  return enumerate_repfree_impl(g, make_class_index(g, eq), budget);
}

std::optional<LongestWord> longest_repfree(const Grammar& g,
                                           std::optional<char> required_terminal,
                                           SearchBudget budget) {
  return longest_impl(g, make_class_index(g), required_terminal, budget);
}

std::optional<LongestWord> longest_repfree(const Grammar& g,
                                           const Equivalence& eq,
                                           std::optional<char> required_terminal,
                                           SearchBudget budget) {
  return longest_impl(g, make_class_index(g, eq), required_terminal, budget);
}

namespace {

// Plain enumeration of every derivation of w, no visited tracking and no
// pruning; completed derivations are tested with the public predicate.
// Kept deliberately naive so it can serve as an oracle for decide_repfree.
struct OracleSearch {
  const Grammar& g;
  const GrammarIndex& gi;
  const Word& w;
  std::uint64_t nodes = 0;
  const std::uint64_t guard;
  std::vector<std::size_t> steps;

  std::optional<Derivation> dfs(int nt, std::size_t pos) {
    if (++nodes > guard) {
      throw BudgetExceeded("oracle_repfree: enumeration guard of " +
                           std::to_string(guard) + " nodes exceeded");
    }
    const bool last = pos + 1 == w.size();
    for (int ri : gi.rules_of[nt]) {
      const CompiledRule& r = gi.rules[ri];
      if (r.terminal != w[pos]) continue;
      if (r.rhs < 0) {
        if (!last) continue;
        steps.push_back(r.rule_index);
        Derivation d{steps};
        steps.pop_back();
        if (is_repetition_free(g, d)) return d;
        continue;
      }
      if (last) continue;
      steps.push_back(r.rule_index);
      if (auto found = dfs(r.rhs, pos + 1)) return found;
      steps.pop_back();
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Derivation> oracle_repfree(const Grammar& g, const Word& w,
                                         std::uint64_t node_guard) {
  if (w.size() > 12) {
    throw std::invalid_argument(
        "oracle_repfree is guarded to words of length 12; got length " +
        std::to_string(w.size()));
  }
  GrammarIndex gi(g);
  check_word_symbols(gi, w);
  if (w.empty()) return std::nullopt;
  OracleSearch search{g, gi, w, 0, node_guard, {}};
  return search.dfs(gi.start, 0);
}

}  // namespace repfree
