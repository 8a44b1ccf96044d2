#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repfree {

// A literal: variable x_var (1-based) or its negation.
struct Literal {
  int var = 0;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

// A clause of exactly three literals. Repeated literals are allowed (a
// narrower clause is padded by repeating one), and slot order matters to
// consumers that index literals by position.
struct Clause {
  std::array<Literal, 3> literals;

  bool operator==(const Clause&) const = default;
};

// A conjunction of 3-literal clauses over variables x_1..x_{var_count}.
// Zero clauses and zero variables are both allowed.
struct CnfFormula {
  int var_count = 0;
  std::vector<Clause> clauses;

  bool operator==(const CnfFormula&) const = default;
};

// Truth values for x_1..x_m as values[0..m-1].
struct Assignment {
  std::vector<bool> values;

  bool operator==(const Assignment&) const = default;
};

// True iff every clause has a satisfied literal. The empty conjunction is
// true. Throws std::invalid_argument when the assignment length differs
// from the formula's variable count.
bool evaluate(const CnfFormula& f, const Assignment& a);

// Sweeps all 2^m assignments in binary counting order (x_1 is the least
// significant bit) and returns the first satisfying one, or nullopt.
// Guarded: throws std::invalid_argument for var_count > 24.
std::optional<Assignment> brute_force_sat(const CnfFormula& f);

// DIMACS CNF reader. `c` comment lines are skipped, a `%` line ends the
// input, and the `p cnf <vars> <clauses>` header must precede the clauses.
// Clauses are zero-terminated; clauses of one or two literals are padded by
// repeating the last literal, clauses of more than three are rejected.
// Throws ParseError with a 1-based line number.
CnfFormula parse_dimacs(std::string_view text);

// Diagnostic rendering, e.g. "(x1+~x2+x4)·(x2+x3+~x4)". The empty
// conjunction prints as "true".
std::string format_formula(const CnfFormula& f);

}  // namespace repfree
