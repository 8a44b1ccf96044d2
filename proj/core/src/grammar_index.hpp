#pragma once

// Internal integer-indexed view of a Grammar, shared by the membership
// sweep, the word enumerators and the repetition-free searches. Not
// installed.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "repfree/grammar.hpp"

namespace repfree::detail {

struct CompiledRule {
  int lhs = -1;
  char terminal = '\0';
  int rhs = -1;  // -1 for final rules
  std::size_t rule_index = 0;
};

struct GrammarIndex {
  const Grammar* g = nullptr;
  std::unordered_map<std::string, int> nt_id;
  std::vector<CompiledRule> rules;
  std::vector<std::vector<int>> rules_of;  // nt id -> indices into `rules`
  std::vector<char> is_terminal = std::vector<char>(256, 0);
  int start = -1;

  explicit GrammarIndex(const Grammar& grammar) : g(&grammar) {
    nt_id.reserve(grammar.nonterminals.size());
    for (const auto& name : grammar.nonterminals) {
      nt_id.emplace(name, static_cast<int>(nt_id.size()));
    }
    auto id_of = [&](const std::string& name) {
      auto it = nt_id.find(name);
      if (it == nt_id.end()) {
        throw std::invalid_argument("grammar references undeclared nonterminal '" +
                                    name + "'");
      }
      return it->second;
    };
    for (char t : grammar.terminals) {
      is_terminal[static_cast<unsigned char>(t)] = 1;
    }
    start = id_of(grammar.start);
    rules_of.resize(grammar.nonterminals.size());
    rules.reserve(grammar.rules.size());
    for (std::size_t k = 0; k < grammar.rules.size(); ++k) {
      const Rule& r = grammar.rules[k];
      CompiledRule cr;
      cr.lhs = id_of(r.lhs);
      cr.terminal = r.terminal;
      cr.rhs = r.rhs ? id_of(*r.rhs) : -1;
      cr.rule_index = k;
      rules_of[cr.lhs].push_back(static_cast<int>(rules.size()));
      rules.push_back(cr);
    }
  }

  int nt_count() const { return static_cast<int>(rules_of.size()); }
};

// Dense class ids aligned with GrammarIndex nonterminal ids.
inline std::vector<int> class_ids(const GrammarIndex& gi, const ClassIndex& ci) {
  std::vector<int> ids(gi.nt_count(), -1);
  for (const auto& name : gi.g->nonterminals) {
    ids[gi.nt_id.at(name)] = ci.of.at(name);
  }
  return ids;
}

// table[p][nt]: can `nt` derive w[p..end), repetitions allowed. Computed
// right to left; row p = |w| stays all-false (no rule derives the empty
// word).
inline std::vector<std::vector<char>> suffix_table(const GrammarIndex& gi,
                                                   const Word& w) {
  const std::size_t len = w.size();
  std::vector<std::vector<char>> table(len + 1,
                                       std::vector<char>(gi.nt_count(), 0));
  for (std::size_t p = len; p-- > 0;) {
    for (const CompiledRule& r : gi.rules) {
      if (r.terminal != w[p]) continue;
      if (r.rhs < 0 ? p + 1 == len : table[p + 1][r.rhs]) {
        table[p][r.lhs] = 1;
      }
    }
  }
  return table;
}

// Growable bitmask over equivalence classes.
class VisitedSet {
 public:
  explicit VisitedSet(int class_count)
      : bits_((static_cast<std::size_t>(class_count) + 63) / 64, 0) {}

  bool test(int c) const { return (bits_[c >> 6] >> (c & 63)) & 1; }
  void set(int c) { bits_[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void clear(int c) { bits_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

 private:
  std::vector<std::uint64_t> bits_;
};

}  // namespace repfree::detail
