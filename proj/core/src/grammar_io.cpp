#include "repfree/grammar_io.hpp"

#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "repfree/errors.hpp"

namespace repfree {

namespace {

// Lines with comments stripped, paired with their 1-based line numbers.
std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(
    std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) out.emplace_back(line_no, std::move(tokens));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty()) {
    throw ParseError(1, "expected 'start <nonterminal>' before any rules");
  }
  const auto& [start_line, start_tokens] = lines.front();
  if (start_tokens.size() != 2 || start_tokens[0] != "start") {
    throw ParseError(start_line, "expected 'start <nonterminal>' before any rules");
  }

  std::vector<Rule> rules;
  std::map<std::tuple<std::string, char, std::optional<std::string>>, int> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& [line_no, tokens] = lines[li];
    if (tokens.size() < 3 || tokens.size() > 4 || tokens[1] != "->") {
      throw ParseError(line_no,
                       "expected '<nonterminal> -> <terminal> [<nonterminal>]'");
    }
    if (tokens[2].size() != 1) {
      throw ParseError(line_no, "terminal '" + tokens[2] +
                                    "' must be a single character");
    }
    Rule r;
    r.lhs = tokens[0];
    r.terminal = tokens[2][0];
    if (tokens.size() == 4) r.rhs = tokens[3];
    auto [it, fresh] =
        seen.emplace(std::tuple{r.lhs, r.terminal, r.rhs}, line_no);
    if (!fresh) {
      throw ParseError(line_no, "duplicate rule (first seen on line " +
                                    std::to_string(it->second) + ")");
    }
    rules.push_back(std::move(r));
  }
  return grammar_from_rules(start_tokens[1], std::move(rules));
}

std::string format_grammar(const Grammar& g) {
  std::string out = "start " + g.start + "\n";
  for (const Rule& r : g.rules) {
    out += r.lhs;
    out += " -> ";
    out += r.terminal;
    if (r.rhs) {
      out += ' ';
      out += *r.rhs;
    }
    out += '\n';
  }
  return out;
}

Derivation parse_derivation(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.size() != 1) {
    throw ParseError(lines.empty() ? 1 : lines[1].first,
                     "expected a single 'deriv <indices...>' line");
  }
  const auto& [line_no, tokens] = lines.front();
  if (tokens[0] != "deriv") {
    throw ParseError(line_no, "expected the line to begin with 'deriv'");
  }
  Derivation d;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok[0] == '-') {
      throw ParseError(line_no, "'" + tok + "' is not a rule index");
    }
    d.steps.push_back(static_cast<std::size_t>(value));
  }
  return d;
}

std::string format_derivation(const Derivation& d) {
  std::string out = "deriv";
  for (std::size_t idx : d.steps) {
    out += ' ';
    out += std::to_string(idx);
  }
  return out;
}

Equivalence parse_equivalence(std::string_view text) {
  Equivalence eq;
  for (const auto& [line_no, tokens] : tokenize_lines(text)) {
    (void)line_no;
    eq.classes.push_back(tokens);
  }
  return eq;
}

std::string format_equivalence(const Equivalence& eq) {
  std::string out;
  for (const auto& members : eq.classes) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out += ' ';
      out += members[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace repfree
