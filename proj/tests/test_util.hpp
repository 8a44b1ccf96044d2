#pragma once

// Shared fixtures and deterministic generators for the test suites. All
// randomness flows through an explicitly seeded std::mt19937, and values are
// drawn with plain modulo so runs are reproducible across standard library
// implementations.

#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "repfree/cnf.hpp"
#include "repfree/grammar.hpp"

namespace testutil {

inline int pick(std::mt19937& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

inline bool chance(std::mt19937& rng, int percent) {
  return pick(rng, 1, 100) <= percent;
}

// The worked example used throughout the suites: a 4-variable, 3-clause
// formula whose reduction grammar has 52 rules and the target word
// a^16 b (ce)^3 d.
inline repfree::CnfFormula example_formula() {
  using repfree::Clause;
  using repfree::Literal;
  repfree::CnfFormula f;
  f.var_count = 4;
  f.clauses = {
      Clause{{Literal{1, false}, Literal{2, true}, Literal{4, false}}},
      Clause{{Literal{2, false}, Literal{3, false}, Literal{4, true}}},
      Clause{{Literal{1, true}, Literal{2, true}, Literal{4, false}}},
  };
  return f;
}

inline const char* example_dimacs() {
  return "c worked example\n"
         "p cnf 4 3\n"
         "1 -2 4 0\n"
         "2 3 -4 0\n"
         "-1 -2 4 0\n";
}

// Formula with m in 1..max_m, n in 1..max_n and uniformly random literals.
inline repfree::CnfFormula random_formula(std::mt19937& rng, int max_m,
                                          int max_n) {
  repfree::CnfFormula f;
  f.var_count = pick(rng, 1, max_m);
  int n = pick(rng, 1, max_n);
  for (int j = 0; j < n; ++j) {
    repfree::Clause c;
    for (int k = 0; k < 3; ++k) {
      c.literals[k] = repfree::Literal{pick(rng, 1, f.var_count),
                                       chance(rng, 50)};
    }
    f.clauses.push_back(c);
  }
  return f;
}

// Grammar with up to max_nt nonterminals (N0.. named, N0 is the start), up
// to max_t terminals drawn from 'a'.., and up to max_rules distinct rules.
inline repfree::Grammar random_grammar(std::mt19937& rng, int max_nt,
                                       int max_t, int max_rules) {
  int nt_count = pick(rng, 1, max_nt);
  int t_count = pick(rng, 1, max_t);
  repfree::Grammar g;
  for (int i = 0; i < nt_count; ++i) {
    g.nonterminals.push_back("N" + std::to_string(i));
  }
  for (int t = 0; t < t_count; ++t) {
    g.terminals.push_back(static_cast<char>('a' + t));
  }
  g.start = "N0";
  int target = pick(rng, 1, max_rules);
  for (int attempt = 0; attempt < 4 * target; ++attempt) {
    if (static_cast<int>(g.rules.size()) >= target) break;
    repfree::Rule r;
    r.lhs = g.nonterminals[pick(rng, 0, nt_count - 1)];
    r.terminal = g.terminals[pick(rng, 0, t_count - 1)];
    if (chance(rng, 70)) {
      r.rhs = g.nonterminals[pick(rng, 0, nt_count - 1)];
    }
    if (!repfree::find_rule(g, r.lhs, r.terminal, r.rhs)) {
      g.rules.push_back(std::move(r));
    }
  }
  return g;
}

// Random word over the grammar's terminals, length 1..max_len.
inline repfree::Word random_word(std::mt19937& rng, const repfree::Grammar& g,
                                 int max_len) {
  int len = pick(rng, 1, max_len);
  repfree::Word w;
  for (int i = 0; i < len; ++i) {
    w.push_back(g.terminals[pick(rng, 0, static_cast<int>(g.terminals.size()) - 1)]);
  }
  return w;
}

// A balanced word sample: roughly half drawn from the language (when it is
// inhabited), the rest random strings over the alphabet.
inline std::vector<repfree::Word> sample_words(std::mt19937& rng,
                                               const repfree::Grammar& g,
                                               const std::set<repfree::Word>& language,
                                               int count, int max_len) {
  std::vector<repfree::Word> words;
  std::vector<repfree::Word> in_language(language.begin(), language.end());
  for (int i = 0; i < count; ++i) {
    if (!in_language.empty() && chance(rng, 50)) {
      words.push_back(in_language[pick(rng, 0, static_cast<int>(in_language.size()) - 1)]);
    } else {
      words.push_back(random_word(rng, g, max_len));
    }
  }
  return words;
}

// Random complete derivation by walking rules from the start symbol, or
// nullopt when the walk dead-ends or never reaches a final rule. This is a
// generator independent of the search code under test.
inline std::optional<repfree::Derivation> random_derivation(
    std::mt19937& rng, const repfree::Grammar& g, int max_len) {
  repfree::Derivation d;
  std::string current = g.start;
  for (int len = 0; len < max_len; ++len) {
    std::vector<std::size_t> applicable;
    for (std::size_t k = 0; k < g.rules.size(); ++k) {
      if (g.rules[k].lhs == current) applicable.push_back(k);
    }
    if (applicable.empty()) return std::nullopt;
    std::size_t idx = applicable[pick(rng, 0, static_cast<int>(applicable.size()) - 1)];
    d.steps.push_back(idx);
    if (!g.rules[idx].rhs) return d;
    current = *g.rules[idx].rhs;
  }
  return std::nullopt;
}

// Random partition fragment: throws a few nonterminals into shared buckets.
inline repfree::Equivalence random_equivalence(std::mt19937& rng,
                                               const repfree::Grammar& g) {
  int buckets = pick(rng, 1, 3);
  std::vector<std::vector<std::string>> classes(buckets);
  for (const auto& name : g.nonterminals) {
    if (chance(rng, 50)) classes[pick(rng, 0, buckets - 1)].push_back(name);
  }
  repfree::Equivalence eq;
  for (auto& members : classes) {
    if (members.size() >= 2) eq.classes.push_back(std::move(members));
  }
  return eq;
}

// Builds a derivation from (lhs, terminal, rhs) triples; throws if a triple
// names no rule, which keeps fixtures honest.
struct Step {
  std::string lhs;
  char terminal;
  std::optional<std::string> rhs;
};

inline repfree::Derivation derivation_of(const repfree::Grammar& g,
                                         const std::vector<Step>& steps) {
  repfree::Derivation d;
  for (const Step& s : steps) {
    auto idx = repfree::find_rule(g, s.lhs, s.terminal, s.rhs);
    if (!idx) {
      throw std::logic_error("fixture references missing rule " + s.lhs + " -> " +
                             std::string(1, s.terminal) +
                             (s.rhs ? " " + *s.rhs : ""));
    }
    d.steps.push_back(*idx);
  }
  return d;
}

// The upper-part walk of the worked example for the assignment
// x1=0, x2=1, x3=0, x4=1 (barred chains for x2 and x4), ending with the
// b-step into T0. 17 steps.
inline std::vector<Step> example_initial_steps() {
  return {
      {"S0", 'a', "X_1_1"},  {"X_1_1", 'a', "X_1_2"},  {"X_1_2", 'a', "X_1_3"},
      {"X_1_3", 'a', "S1"},  {"S1", 'a', "Xb_2_1"},    {"Xb_2_1", 'a', "Xb_2_2"},
      {"Xb_2_2", 'a', "Xb_2_3"}, {"Xb_2_3", 'a', "S2"}, {"S2", 'a', "X_3_1"},
      {"X_3_1", 'a', "X_3_2"}, {"X_3_2", 'a', "X_3_3"}, {"X_3_3", 'a', "S3"},
      {"S3", 'a', "Xb_4_1"}, {"Xb_4_1", 'a', "Xb_4_2"}, {"Xb_4_2", 'a', "Xb_4_3"},
      {"Xb_4_3", 'a', "S4"}, {"S4", 'b', "T0"},
  };
}

// Lower-part walk completing the word. With fresh_first_hop the first
// clause hops through X_4_1 (not used above, so the whole derivation stays
// repetition free); without it the hop reuses X_1_1. 7 steps.
inline std::vector<Step> example_final_steps(bool fresh_first_hop) {
  std::vector<Step> steps;
  if (fresh_first_hop) {
    steps.push_back({"T0", 'c', "X_4_1"});
    steps.push_back({"X_4_1", 'e', "T1"});
  } else {
    steps.push_back({"T0", 'c', "X_1_1"});
    steps.push_back({"X_1_1", 'e', "T1"});
  }
  steps.push_back({"T1", 'c', "X_2_2"});
  steps.push_back({"X_2_2", 'e', "T2"});
  steps.push_back({"T2", 'c', "X_4_3"});
  steps.push_back({"X_4_3", 'e', "T3"});
  steps.push_back({"T3", 'd', std::nullopt});
  return steps;
}

inline std::vector<Step> example_full_steps(bool fresh_first_hop) {
  std::vector<Step> steps = example_initial_steps();
  for (auto& s : example_final_steps(fresh_first_hop)) steps.push_back(s);
  return steps;
}

}  // namespace testutil
