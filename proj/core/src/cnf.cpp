#include "repfree/cnf.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "repfree/errors.hpp"

namespace repfree {

bool evaluate(const CnfFormula& f, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != f.var_count) {
    throw std::invalid_argument(
        "assignment has " + std::to_string(a.values.size()) +
        " values but the formula has " + std::to_string(f.var_count) +
        " variables");
  }
  for (const Clause& c : f.clauses) {
    bool satisfied = false;
    for (const Literal& lit : c.literals) {
      if (a.values[lit.var - 1] != lit.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::optional<Assignment> brute_force_sat(const CnfFormula& f) {
  if (f.var_count > 24) {
    throw std::invalid_argument("brute_force_sat is guarded to 24 variables; got " +
                                std::to_string(f.var_count));
  }
  const std::uint64_t total = std::uint64_t{1} << f.var_count;
  for (std::uint64_t k = 0; k < total; ++k) {
    Assignment a;
    a.values.resize(f.var_count);
    for (int i = 0; i < f.var_count; ++i) {
      a.values[i] = (k >> i) & 1;  // x_1 is the least significant bit
    }
    if (evaluate(f, a)) return a;
  }
  return std::nullopt;
}

namespace {

struct Token {
  int line;
  std::string text;
};

std::vector<Token> dimacs_tokens(std::string_view text) {
  std::vector<Token> tokens;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
    ++line_no;
    std::istringstream in(line);
    std::string tok;
    if (in >> tok) {
      if (tok == "c") {
        // comment line
      } else if (tok == "%") {
        break;  // conventional end-of-file marker
      } else {
        tokens.push_back({line_no, tok});
        while (in >> tok) tokens.push_back({line_no, tok});
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return tokens;
}

long long parse_int(const Token& t) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size()) {
    throw ParseError(t.line, "'" + t.text + "' is not an integer");
  }
  return value;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  auto tokens = dimacs_tokens(text);
  if (tokens.size() < 4 || tokens[0].text != "p" || tokens[1].text != "cnf") {
    throw ParseError(tokens.empty() ? 1 : tokens[0].line,
                     "expected a 'p cnf <vars> <clauses>' header");
  }
  long long vars = parse_int(tokens[2]);
  long long clause_count = parse_int(tokens[3]);
  if (vars < 0 || clause_count < 0) {
    throw ParseError(tokens[2].line, "header counts must be non-negative");
  }

  CnfFormula f;
  f.var_count = static_cast<int>(vars);
  std::vector<Literal> current;
  int current_line = tokens.size() > 4 ? tokens[4].line : tokens[3].line;
  for (std::size_t i = 4; i < tokens.size(); ++i) {
    long long v = parse_int(tokens[i]);
    if (v == 0) {
      if (current.empty()) {
        throw ParseError(tokens[i].line, "empty clause");
      }
      // Narrow clauses are padded by repeating the last literal, which
      // leaves satisfiability unchanged.
      while (current.size() < 3) current.push_back(current.back());
      f.clauses.push_back(Clause{{current[0], current[1], current[2]}});
      current.clear();
    } else {
      if (v < -vars || v > vars) {
        throw ParseError(tokens[i].line,
                         "literal " + tokens[i].text +
                             " is outside the declared variable range");
      }
      if (current.size() == 3) {
        throw ParseError(tokens[i].line,
                         "clause has more than three literals");
      }
      current_line = tokens[i].line;
      current.push_back(Literal{static_cast<int>(v < 0 ? -v : v), v < 0});
    }
  }
  if (!current.empty()) {
    throw ParseError(current_line, "unterminated clause (missing 0)");
  }
  if (static_cast<long long>(f.clauses.size()) != clause_count) {
    throw ParseError(tokens[3].line,
                     "header declares " + std::to_string(clause_count) +
                         " clauses but " + std::to_string(f.clauses.size()) +
                         " were given");
  }
  return f;
}

std::string format_formula(const CnfFormula& f) {
  if (f.clauses.empty()) return "true";
  std::string out;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    if (j) out += "·";
    out += '(';
    for (int k = 0; k < 3; ++k) {
      if (k) out += '+';
      const Literal& lit = f.clauses[j].literals[k];
      if (lit.negated) out += '~';
      out += 'x';
      out += std::to_string(lit.var);
    }
    out += ')';
  }
  return out;
}

}  // namespace repfree
