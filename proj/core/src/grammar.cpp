#include "repfree/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "grammar_index.hpp"
#include "repfree/errors.hpp"

namespace repfree {

namespace {

std::string rule_text(const Rule& r) {
  std::string s = r.lhs + " -> " + std::string(1, r.terminal);
  if (r.rhs) s += " " + *r.rhs;
  return s;
}

bool usable_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return name[0] != '#';
}

// Walks the chain and hands each step's rule to `visit`. Shared by replay
// and occurring_nonterminals so both enforce the same chain validity.
template <typename Visit>
void walk_chain(const Grammar& g, const Derivation& d, Visit visit) {
  const std::string* expected = &g.start;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    std::size_t idx = d.steps[i];
    if (idx >= g.rules.size()) {
      throw std::invalid_argument("step " + std::to_string(i) +
                                  ": rule index " + std::to_string(idx) +
                                  " out of range");
    }
    const Rule& r = g.rules[idx];
    if (r.lhs != *expected) {
      throw std::invalid_argument(
          "step " + std::to_string(i) + ": expected a rule for '" + *expected +
          "' but rule " + std::to_string(idx) + " rewrites '" + r.lhs + "'");
    }
    if (!r.rhs && i + 1 < d.steps.size()) {
      throw std::invalid_argument("step " + std::to_string(i) +
                                  ": final rule used before the last step");
    }
    visit(r);
    if (r.rhs) expected = &*r.rhs;
  }
}

}  // namespace

ValidationReport validate(const Grammar& g) {
  ValidationReport report;
  auto flag = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::unordered_set<std::string> nts;
  for (const auto& name : g.nonterminals) {
    if (!usable_name(name)) {
      flag("nonterminal name '" + name + "' is empty, contains whitespace or starts with '#'");
    }
    if (!nts.insert(name).second) {
      flag("nonterminal '" + name + "' declared twice");
    }
  }
  std::set<char> terms;
  for (char t : g.terminals) {
    if (!terms.insert(t).second) {
      flag(std::string("terminal '") + t + "' declared twice");
    }
    if (nts.count(std::string(1, t))) {
      flag(std::string("name '") + t + "' is both a terminal and a nonterminal");
    }
  }
  if (!nts.count(g.start)) {
    flag("start symbol '" + g.start + "' is not a declared nonterminal");
  }

  std::map<std::tuple<std::string, char, std::optional<std::string>>, std::size_t> seen;
  for (std::size_t k = 0; k < g.rules.size(); ++k) {
    const Rule& r = g.rules[k];
    std::string where = "rule " + std::to_string(k) + " (" + rule_text(r) + ")";
    if (!nts.count(r.lhs)) flag(where + ": lhs is not a declared nonterminal");
    if (!terms.count(r.terminal)) flag(where + ": terminal is not declared");
    if (r.rhs && !nts.count(*r.rhs)) flag(where + ": rhs is not a declared nonterminal");
    auto [it, fresh] = seen.emplace(std::tuple{r.lhs, r.terminal, r.rhs}, k);
    if (!fresh) {
      flag(where + ": duplicates rule " + std::to_string(it->second));
    }
  }
  return report;
}

ValidationReport validate_equivalence(const Grammar& g, const Equivalence& eq) {
  ValidationReport report;
  std::unordered_set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  std::unordered_set<std::string> assigned;
  for (std::size_t c = 0; c < eq.classes.size(); ++c) {
    const auto& members = eq.classes[c];
    std::string where = "class " + std::to_string(c);
    if (members.empty()) {
      report.violations.push_back(where + " is empty");
    }
    for (const auto& name : members) {
      if (!nts.count(name)) {
        report.violations.push_back(where + ": '" + name +
                                    "' is not a nonterminal of the grammar");
      }
      if (!assigned.insert(name).second) {
        report.violations.push_back(where + ": '" + name +
                                    "' appears in more than one class");
      }
    }
  }
  return report;
}

ClassIndex make_class_index(const Grammar& g) {
  ClassIndex ci;
  for (const auto& name : g.nonterminals) {
    ci.of.emplace(name, ci.count++);
  }
  return ci;
}

ClassIndex make_class_index(const Grammar& g, const Equivalence& eq) {
  ValidationReport check = validate_equivalence(g, eq);
  if (!check.ok()) {
    throw std::invalid_argument("invalid equivalence: " + check.violations.front());
  }
  std::unordered_map<std::string, std::size_t> class_of;  // name -> eq class
  for (std::size_t c = 0; c < eq.classes.size(); ++c) {
    for (const auto& name : eq.classes[c]) class_of.emplace(name, c);
  }
  // Ids follow first appearance in g.nonterminals, one per class.
  ClassIndex ci;
  std::unordered_map<std::size_t, int> id_of_class;
  for (const auto& name : g.nonterminals) {
    if (ci.of.count(name)) continue;
    auto it = class_of.find(name);
    if (it == class_of.end()) {
      ci.of.emplace(name, ci.count++);  // singleton
      continue;
    }
    auto [cls, fresh] = id_of_class.emplace(it->second, ci.count);
    if (fresh) ++ci.count;
    for (const auto& member : eq.classes[it->second]) {
      ci.of.emplace(member, cls->second);
    }
  }
  return ci;
}

Word replay(const Grammar& g, const Derivation& d) {
  Word w;
  w.reserve(d.steps.size());
  walk_chain(g, d, [&](const Rule& r) { w.push_back(r.terminal); });
  return w;
}

std::vector<std::string> occurring_nonterminals(const Grammar& g,
                                                const Derivation& d) {
  std::vector<std::string> occ;
  occ.reserve(d.steps.size() + 1);
  occ.push_back(g.start);
  walk_chain(g, d, [&](const Rule& r) {
    if (r.rhs) occ.push_back(*r.rhs);
  });
  return occ;
}

namespace {

bool repetition_free_under(const Grammar& g, const Derivation& d,
                           const ClassIndex& ci) {
  std::vector<char> seen(ci.count, 0);
  for (const auto& name : occurring_nonterminals(g, d)) {
    auto it = ci.of.find(name);
    if (it == ci.of.end()) {
      throw std::invalid_argument("nonterminal '" + name +
                                  "' has no equivalence class");
    }
    if (seen[it->second]) return false;
    seen[it->second] = 1;
  }
  return true;
}

}  // namespace

bool is_repetition_free(const Grammar& g, const Derivation& d) {
  return repetition_free_under(g, d, make_class_index(g));
}

bool is_repetition_free(const Grammar& g, const Derivation& d,
                        const Equivalence& eq) {
  return repetition_free_under(g, d, make_class_index(g, eq));
}

bool derives(const Grammar& g, const Word& w) {
  detail::GrammarIndex gi(g);
  for (char c : w) {
    if (!gi.is_terminal[static_cast<unsigned char>(c)]) {
      throw std::invalid_argument(std::string("word symbol '") + c +
                                  "' is not in the terminal alphabet");
    }
  }
  if (w.empty()) return false;
  // Reachable-nonterminal set swept across the word.
  std::vector<char> cur(gi.nt_count(), 0);
  cur[gi.start] = 1;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const bool last = p + 1 == w.size();
    std::vector<char> next(gi.nt_count(), 0);
    for (const detail::CompiledRule& r : gi.rules) {
      if (!cur[r.lhs] || r.terminal != w[p]) continue;
      if (r.rhs < 0) {
        if (last) return true;
      } else {
        next[r.rhs] = 1;
      }
    }
    cur = std::move(next);
  }
  return false;
}

std::set<Word> enumerate_words(const Grammar& g, int max_len,
                               EnumOptions options) {
  if (max_len <= 0) {
    throw std::invalid_argument("max_len must be positive");
  }
  if (max_len > options.max_len_guard) {
    throw std::invalid_argument(
        "max_len " + std::to_string(max_len) + " exceeds the guard of " +
        std::to_string(options.max_len_guard) +
        "; raise EnumOptions::max_len_guard to enumerate further");
  }
  detail::GrammarIndex gi(g);
  std::set<Word> words;
  std::set<std::pair<int, std::string>> frontier{{gi.start, ""}};
  std::uint64_t expanded = 0;
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::set<std::pair<int, std::string>> next;
    for (const auto& [nt, prefix] : frontier) {
      if (++expanded > options.state_cap) {
        throw BudgetExceeded("enumerate_words: state cap of " +
                             std::to_string(options.state_cap) + " exceeded");
      }
      for (int ri : gi.rules_of[nt]) {
        const detail::CompiledRule& r = gi.rules[ri];
        if (r.rhs < 0) {
          words.insert(prefix + r.terminal);
        } else if (len < max_len) {
          next.emplace(r.rhs, prefix + r.terminal);
        }
      }
    }
    frontier = std::move(next);
  }
  return words;
}

Grammar grammar_from_rules(std::string start, std::vector<Rule> rules) {
  Grammar g;
  g.start = start;
  std::unordered_set<std::string> seen_nt;
  std::set<char> seen_t;
  auto add_nt = [&](const std::string& name) {
    if (seen_nt.insert(name).second) g.nonterminals.push_back(name);
  };
  add_nt(start);
  for (const Rule& r : rules) {
    add_nt(r.lhs);
    if (seen_t.insert(r.terminal).second) g.terminals.push_back(r.terminal);
    if (r.rhs) add_nt(*r.rhs);
  }
  g.rules = std::move(rules);
  return g;
}

std::optional<std::size_t> find_rule(const Grammar& g, const std::string& lhs,
                                     char terminal,
                                     const std::optional<std::string>& rhs) {
  for (std::size_t k = 0; k < g.rules.size(); ++k) {
    const Rule& r = g.rules[k];
    if (r.lhs == lhs && r.terminal == terminal && r.rhs == rhs) return k;
  }
  return std::nullopt;
}

}  // namespace repfree
