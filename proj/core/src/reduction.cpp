#include "repfree/reduction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace repfree {

namespace {

std::string s_name(int i) { return "S" + std::to_string(i); }
std::string t_name(int j) { return "T" + std::to_string(j); }
std::string chain_name(int i, int j, bool bar, bool primed) {
  std::string name = bar ? "Xb_" : "X_";
  name += std::to_string(i);
  name += '_';
  name += std::to_string(j);
  if (primed) name += "_p";
  return name;
}

struct Builder {
  Grammar g;
  std::set<std::tuple<std::string, char, std::optional<std::string>>> seen;

  void add(const std::string& lhs, char t, std::optional<std::string> rhs) {
    if (!seen.emplace(lhs, t, rhs).second) return;  // collapse duplicates
    g.rules.push_back(Rule{lhs, t, std::move(rhs)});
  }
};

ReductionLayout make_layout(const CnfFormula& f, bool primed_gamma) {
  const int m = f.var_count;
  const int n = static_cast<int>(f.clauses.size());
  ReductionLayout lay;
  lay.var_count = m;
  lay.clause_count = n;
  for (int i = 0; i <= m; ++i) {
    lay.s_names.push_back(s_name(i));
    lay.roles[lay.s_names.back()] = Role{Role::Kind::S, i, 0, false};
  }
  for (int j = 0; j <= n; ++j) {
    lay.t_names.push_back(t_name(j));
    lay.roles[lay.t_names.back()] = Role{Role::Kind::T, 0, j, false};
  }
  lay.x_names.resize(m);
  lay.xbar_names.resize(m);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      lay.x_names[i - 1].push_back(chain_name(i, j, false, false));
      lay.roles[lay.x_names[i - 1].back()] = Role{Role::Kind::X, i, j, false};
      lay.xbar_names[i - 1].push_back(chain_name(i, j, true, false));
      lay.roles[lay.xbar_names[i - 1].back()] = Role{Role::Kind::Xbar, i, j, false};
    }
  }
  for (int j = 1; j <= n; ++j) {
    std::array<std::string, 3> gamma_row;
    for (int k = 1; k <= 3; ++k) {
      const Literal& lit = f.clauses[j - 1].literals[k - 1];
      if (lit.var < 1 || lit.var > m) {
        throw std::invalid_argument("clause " + std::to_string(j) +
                                    " uses variable x" + std::to_string(lit.var) +
                                    " outside 1.." + std::to_string(m));
      }
      gamma_row[k - 1] = chain_name(lit.var, j, lit.negated, primed_gamma);
    }
    lay.gamma.push_back(std::move(gamma_row));
  }
  return lay;
}

Reduction build_common(const CnfFormula& f, bool reversed, bool primed) {
  const int m = f.var_count;
  const int n = static_cast<int>(f.clauses.size());
  ReductionLayout lay = make_layout(f, primed);

  Builder b;
  b.g.start = lay.s_names[0];
  b.g.terminals = {'a', 'b', 'c', 'd', 'e'};
  for (int i = 0; i <= m; ++i) b.g.nonterminals.push_back(lay.s_names[i]);
  for (int j = 0; j <= n; ++j) b.g.nonterminals.push_back(lay.t_names[j]);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) b.g.nonterminals.push_back(lay.x_names[i - 1][j - 1]);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) b.g.nonterminals.push_back(lay.xbar_names[i - 1][j - 1]);
  if (primed) {
    for (bool bar : {false, true}) {
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
          std::string name = chain_name(i, j, bar, true);
          b.g.nonterminals.push_back(name);
          lay.roles[name] =
              Role{bar ? Role::Kind::Xbar : Role::Kind::X, i, j, true};
        }
      }
    }
  }

  auto x = [&](int i, int j, bool bar) {
    return (bar ? lay.xbar_names : lay.x_names)[i - 1][j - 1];
  };

  // Upper part: one chain block per variable. With no clauses there are no
  // chain nonterminals, so the block families vanish.
  if (n >= 1) {
    const int entry = reversed ? n : 1;   // block entered at X_i<entry>
    const int exit = reversed ? 1 : n;    // and left from X_i<exit>
    const int step = reversed ? -1 : 1;
    for (bool bar : {false, true}) {
      for (int i = 1; i <= m; ++i) {
        b.add(lay.s_names[i - 1], 'a', x(i, entry, bar));
      }
    }
    for (bool bar : {false, true}) {
      for (int i = 1; i <= m; ++i) {
        for (int j = entry; j != exit; j += step) {
          b.add(x(i, j, bar), 'a', x(i, j + step, bar));
        }
      }
    }
    for (bool bar : {false, true}) {
      for (int i = 1; i <= m; ++i) {
        b.add(x(i, exit, bar), 'a', lay.s_names[i]);
      }
    }
  }
  b.add(lay.s_names[m], 'b', lay.t_names[0]);

  // Lower part: a (c, e) hop per clause slot, then the closing d.
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= 3; ++k) {
      b.add(lay.t_names[j - 1], 'c', lay.gamma[j - 1][k - 1]);
    }
  }
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= 3; ++k) {
      b.add(lay.gamma[j - 1][k - 1], 'e', lay.t_names[j]);
    }
  }
  b.add(lay.t_names[n], 'd', std::nullopt);

  return Reduction{std::move(b.g), std::move(lay)};
}

}  // namespace

Reduction build_grammar(const CnfFormula& f) {
  return build_common(f, /*reversed=*/false, /*primed=*/false);
}

Reduction build_reversed_grammar(const CnfFormula& f) {
  return build_common(f, /*reversed=*/true, /*primed=*/false);
}

PrimedReduction build_primed(const CnfFormula& f) {
  Reduction r = build_common(f, /*reversed=*/false, /*primed=*/true);
  Equivalence eq;
  for (bool bar : {false, true}) {
    for (int i = 1; i <= f.var_count; ++i) {
      for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
        eq.classes.push_back({chain_name(i, static_cast<int>(j), bar, false),
                              chain_name(i, static_cast<int>(j), bar, true)});
      }
    }
  }
  return PrimedReduction{std::move(r.grammar), std::move(eq), std::move(r.layout)};
}

Word target_word(const CnfFormula& f) {
  const int m = f.var_count;
  const int n = static_cast<int>(f.clauses.size());
  Word w(static_cast<std::size_t>(n + 1) * m, 'a');
  w += 'b';
  for (int j = 0; j < n; ++j) w += "ce";
  w += 'd';
  return w;
}

int length_bound(const CnfFormula& f) {
  return (static_cast<int>(f.clauses.size()) + 1) * (f.var_count + 2);
}

Grammar quotient(const Grammar& g, const Equivalence& eq) {
  ClassIndex ci = make_class_index(g, eq);  // validates eq
  // Representative of each class: its first member in nonterminal order.
  std::vector<std::string> rep(ci.count);
  std::vector<char> have(ci.count, 0);
  Grammar q;
  q.terminals = g.terminals;
  for (const auto& name : g.nonterminals) {
    int c = ci.of.at(name);
    if (!have[c]) {
      have[c] = 1;
      rep[c] = name;
      q.nonterminals.push_back(name);
    }
  }
  q.start = rep[ci.of.at(g.start)];
  std::set<std::tuple<std::string, char, std::optional<std::string>>> seen;
  for (const Rule& r : g.rules) {
    Rule mapped;
    mapped.lhs = rep[ci.of.at(r.lhs)];
    mapped.terminal = r.terminal;
    if (r.rhs) mapped.rhs = rep[ci.of.at(*r.rhs)];
    if (seen.emplace(mapped.lhs, mapped.terminal, mapped.rhs).second) {
      q.rules.push_back(std::move(mapped));
    }
  }
  return q;
}

namespace {

// Rule lookup that throws with a description when the rule is missing;
// the builders above guarantee presence for every call site below.
std::size_t rule_index(const Grammar& g, const std::string& lhs, char t,
                       const std::optional<std::string>& rhs) {
  if (auto idx = find_rule(g, lhs, t, rhs)) return *idx;
  throw std::logic_error("reduction grammar is missing rule " + lhs);
}

}  // namespace

Derivation assignment_to_derivation(const CnfFormula& f, const Assignment& a) {
  if (!evaluate(f, a)) {  // also checks the length
    throw std::invalid_argument(
        "assignment does not satisfy the formula: " + format_formula(f));
  }
  const int m = f.var_count;
  const int n = static_cast<int>(f.clauses.size());
  if (n == 0 && m >= 1) {
    throw std::invalid_argument(
        "a formula with variables but no clauses has an empty language; "
        "the target word is not derivable");
  }
  Reduction r = build_grammar(f);
  const Grammar& g = r.grammar;
  const ReductionLayout& lay = r.layout;

  Derivation d;
  // Upper part: thread the barred chain of block i exactly when x_i is 1.
  for (int i = 1; i <= m; ++i) {
    const auto& chain = a.values[i - 1] ? lay.xbar_names[i - 1] : lay.x_names[i - 1];
    d.steps.push_back(rule_index(g, lay.s_names[i - 1], 'a', chain[0]));
    for (int j = 1; j < n; ++j) {
      d.steps.push_back(rule_index(g, chain[j - 1], 'a', chain[j]));
    }
    d.steps.push_back(rule_index(g, chain[n - 1], 'a', lay.s_names[i]));
  }
  d.steps.push_back(rule_index(g, lay.s_names[m], 'b', lay.t_names[0]));
  // Lower part: hop through the lowest satisfied slot of each clause. Its
  // gamma has the opposite bar of the chain threaded above, so it is fresh.
  for (int j = 1; j <= n; ++j) {
    int k = 0;
    for (; k < 3; ++k) {
      const Literal& lit = f.clauses[j - 1].literals[k];
      if (a.values[lit.var - 1] != lit.negated) break;
    }
    const std::string& hop = lay.gamma[j - 1][k];
    d.steps.push_back(rule_index(g, lay.t_names[j - 1], 'c', hop));
    d.steps.push_back(rule_index(g, hop, 'e', lay.t_names[j]));
  }
  d.steps.push_back(rule_index(g, lay.t_names[n], 'd', std::nullopt));
  return d;
}

Assignment derivation_to_assignment(const CnfFormula& f, const Derivation& d) {
  Reduction r = build_grammar(f);
  Word replayed = replay(r.grammar, d);
  Word target = target_word(f);
  if (replayed != target) {
    throw std::invalid_argument("derivation replays to '" + replayed +
                                "', not the target word '" + target + "'");
  }
  Assignment a;
  a.values.assign(f.var_count, false);
  for (std::size_t s = 0; s < d.steps.size(); ++s) {
    const Rule& rule = r.grammar.rules[d.steps[s]];
    if (rule.terminal == 'b') break;  // end of the upper part
    if (!rule.rhs) continue;
    const Role& role = r.layout.roles.at(*rule.rhs);
    if (role.kind == Role::Kind::Xbar) a.values[role.i - 1] = true;
  }
  return a;
}

PairTrace pair_trace(const Grammar& g, const ReductionLayout& layout,
                     const Derivation& d) {
  const int n = layout.clause_count;
  auto role_of = [&](const std::string& name) -> const Role& {
    auto it = layout.roles.find(name);
    if (it == layout.roles.end()) {
      throw std::invalid_argument("nonterminal '" + name +
                                  "' has no role in this layout");
    }
    return it->second;
  };
  auto j_star = [&](const Role& role) {
    return role.kind == Role::Kind::S ? 0 : role.j;
  };

  std::vector<std::string> occ = occurring_nonterminals(g, d);
  const bool complete = !d.steps.empty() && !g.rules[d.steps.back()].rhs;

  PairTrace trace;
  std::set<int> s_seen;
  for (const auto& name : occ) {
    const Role& role = role_of(name);
    if (role.kind == Role::Kind::S) s_seen.insert(role.i);
    trace.pairs.emplace_back(static_cast<int>(s_seen.size()), j_star(role));
  }
  if (complete) {
    // Terminal-only word: clause progress is complete.
    trace.pairs.emplace_back(static_cast<int>(s_seen.size()), n);
  }

  trace.monotone = true;
  for (std::size_t s = 0; s < d.steps.size(); ++s) {
    const auto& [s1, j1] = trace.pairs[s];
    const auto& [s2, j2] = trace.pairs[s + 1];
    char t = g.rules[d.steps[s]].terminal;
    if (t == 'a' || t == 'c') {
      if (!(s2 > s1 || (s2 == s1 && j2 > j1))) trace.monotone = false;
    } else if (t == 'b' || t == 'd' || t == 'e') {
      if (s2 != s1 || j2 != j1) trace.monotone = false;
    } else {
      throw std::invalid_argument(std::string("unexpected terminal '") + t +
                                  "' for a reduction grammar");
    }
  }
  return trace;
}

std::string format_layout(const Grammar& g, const ReductionLayout& layout) {
  std::string out;
  for (const auto& name : g.nonterminals) {
    auto it = layout.roles.find(name);
    if (it == layout.roles.end()) continue;
    const Role& role = it->second;
    out += name;
    out += '\t';
    switch (role.kind) {
      case Role::Kind::S:
        out += "S(" + std::to_string(role.i) + ")";
        break;
      case Role::Kind::T:
        out += "T(" + std::to_string(role.j) + ")";
        break;
      case Role::Kind::X:
      case Role::Kind::Xbar:
        out += role.kind == Role::Kind::X ? "X" : "Xb";
        if (role.primed) out += "p";
        out += "(" + std::to_string(role.i) + "," + std::to_string(role.j) + ")";
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace repfree
