#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "repfree/cnf.hpp"
#include "repfree/errors.hpp"
#include "test_util.hpp"

using namespace repfree;
using testutil::example_dimacs;
using testutil::example_formula;

TEST_CASE("evaluate checks clauses against an assignment") {
  CnfFormula f = example_formula();
  REQUIRE(f.var_count == 4);
  REQUIRE(f.clauses.size() == 3);

  // x2 = x4 = 1 satisfies every clause via its middle or last literal.
  CHECK(evaluate(f, Assignment{{false, true, false, true}}));
  // All-true works too: x4 = 1 keeps the last clause alive.
  CHECK(evaluate(f, Assignment{{true, true, true, true}}));
  // x1 = 0, x2 = 1, x4 = 0 kills every literal of the first clause.
  CHECK_FALSE(evaluate(f, Assignment{{false, true, false, false}}));
  CHECK_FALSE(evaluate(f, Assignment{{false, true, true, false}}));
  CHECK_THROWS_AS(evaluate(f, Assignment{{true, false}}),
                  std::invalid_argument);
}

TEST_CASE("evaluate on an empty formula is vacuously true") {
  CnfFormula f{0, {}};
  CHECK(evaluate(f, Assignment{}));
}

TEST_CASE("brute_force_sat returns the first satisfying assignment") {
  SUBCASE("worked example is satisfied by all-false") {
    auto a = brute_force_sat(example_formula());
    REQUIRE(a.has_value());
    CHECK(a->values == std::vector<bool>{false, false, false, false});
  }
  SUBCASE("ordering: x1 is the least significant bit") {
    // Force x1 = 1 and x2 = 0: first match is assignment #1 = (1, 0).
    CnfFormula f{2,
                 {Clause{{Literal{1, false}, Literal{1, false}, Literal{1, false}}},
                  Clause{{Literal{2, true}, Literal{2, true}, Literal{2, true}}}}};
    auto a = brute_force_sat(f);
    REQUIRE(a.has_value());
    CHECK(a->values == std::vector<bool>{true, false});
  }
  SUBCASE("complementary unit clauses are unsatisfiable") {
    CnfFormula f{1,
                 {Clause{{Literal{1, false}, Literal{1, false}, Literal{1, false}}},
                  Clause{{Literal{1, true}, Literal{1, true}, Literal{1, true}}}}};
    CHECK_FALSE(brute_force_sat(f).has_value());
  }
  SUBCASE("no variables, no clauses") {
    auto a = brute_force_sat(CnfFormula{0, {}});
    REQUIRE(a.has_value());
    CHECK(a->values.empty());
  }
  SUBCASE("guard against huge sweeps") {
    CnfFormula f{25, {}};
    CHECK_THROWS_AS(brute_force_sat(f), std::invalid_argument);
  }
}

TEST_CASE("parse_dimacs reads the worked example") {
  CnfFormula f = parse_dimacs(example_dimacs());
  CHECK(f == example_formula());
}

TEST_CASE("parse_dimacs pads short clauses by repeating the last literal") {
  CnfFormula f = parse_dimacs("p cnf 2 2\n1 0\n-1 2 0\n");
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] ==
        Clause{{Literal{1, false}, Literal{1, false}, Literal{1, false}}});
  CHECK(f.clauses[1] ==
        Clause{{Literal{1, true}, Literal{2, false}, Literal{2, false}}});
}

TEST_CASE("parse_dimacs skips comments and the % trailer") {
  const char* text =
      "c header comment\n"
      "p cnf 1 1\n"
      "c inline comment\n"
      "1 0\n"
      "%\n"
      "0\n";
  CnfFormula f = parse_dimacs(text);
  CHECK(f.var_count == 1);
  CHECK(f.clauses.size() == 1);
}

TEST_CASE("parse_dimacs rejects malformed input") {
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), ParseError);         // no header
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 0\n"), ParseError);  // bad count
  CHECK_THROWS_AS(parse_dimacs("p sat 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);  // count drift
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 0\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 2 3 4 0\n"), ParseError);  // wide
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);  // range
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0 0\n"), ParseError);   // zero var
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);   // unclosed
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\njunk 0\n"), ParseError);
}

TEST_CASE("parse_dimacs permits empty formulas") {
  CnfFormula f = parse_dimacs("p cnf 0 0\n");
  CHECK(f.var_count == 0);
  CHECK(f.clauses.empty());
  CHECK(format_formula(f) == "true");
}

TEST_CASE("format_formula prints readable clauses") {
  CHECK(format_formula(example_formula()) ==
        "(x1+~x2+x4)·(x2+x3+~x4)·(~x1+~x2+x4)");
}

TEST_CASE("property: padded duplicates never change satisfiability") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    CnfFormula f = testutil::random_formula(rng, 4, 4);

    // Render to DIMACS with the last literal of each clause dropped, which
    // the parser restores via padding: clause semantics are unchanged
    // whenever the dropped literal repeats an earlier one.
    CnfFormula doubled = f;
    for (Clause& c : doubled.clauses) c.literals[2] = c.literals[1];

    std::ostringstream dimacs;
    dimacs << "p cnf " << doubled.var_count << ' ' << doubled.clauses.size()
           << '\n';
    for (const Clause& c : doubled.clauses) {
      dimacs << (c.literals[0].negated ? -c.literals[0].var : c.literals[0].var)
             << ' '
             << (c.literals[1].negated ? -c.literals[1].var : c.literals[1].var)
             << " 0\n";
    }
    CnfFormula reparsed = parse_dimacs(dimacs.str());
    CHECK(reparsed == doubled);
    CHECK(brute_force_sat(reparsed).has_value() ==
          brute_force_sat(doubled).has_value());
  }
}

TEST_CASE("property: brute_force_sat answers agree with evaluate") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    CnfFormula f = testutil::random_formula(rng, 5, 4);
    auto a = brute_force_sat(f);
    if (a) {
      CHECK(evaluate(f, *a));
    } else {
      // Exhaust the space to confirm.
      int combos = 1 << f.var_count;
      for (int k = 0; k < combos; ++k) {
        Assignment probe;
        for (int i = 0; i < f.var_count; ++i)
          probe.values.push_back(((k >> i) & 1) != 0);
        CHECK_FALSE(evaluate(f, probe));
      }
    }
  }
}
