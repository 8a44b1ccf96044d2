#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "repfree/cnf.hpp"
#include "repfree/errors.hpp"
#include "repfree/grammar.hpp"
#include "repfree/grammar_io.hpp"
#include "repfree/reduction.hpp"
#include "repfree/solver.hpp"

namespace repfree::cli {

namespace {

// Thrown by helpers below; carries a ready-to-print message and maps to
// exit_usage.
struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot read file: " + path);
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("cannot write file: " + path);
  out << content;
  if (!out) throw CommandError("cannot write file: " + path);
}

// Wraps a parser so its ParseError gains the file name.
template <typename Parser>
auto parse_file(const std::string& path, Parser parser) {
  try {
    return parser(read_file(path));
  } catch (const ParseError& e) {
    throw CommandError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

Grammar load_grammar(const std::string& path) {
  Grammar g = parse_file(path, [](const std::string& s) { return parse_grammar(s); });
  ValidationReport report = validate(g);
  if (!report.ok()) {
    std::string msg = path + ": invalid grammar";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw CommandError(msg);
  }
  return g;
}

CnfFormula load_formula(const std::string& path) {
  return parse_file(path, [](const std::string& s) { return parse_dimacs(s); });
}

Equivalence load_equivalence(const std::string& path, const Grammar& g) {
  Equivalence eq =
      parse_file(path, [](const std::string& s) { return parse_equivalence(s); });
  ValidationReport report = validate_equivalence(g, eq);
  if (!report.ok()) {
    std::string msg = path + ": invalid equivalence";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw CommandError(msg);
  }
  return eq;
}

std::uint64_t default_max_nodes() {
  const char* env = std::getenv("REPFREE_MAX_NODES");
  if (!env) return SearchBudget{}.max_nodes;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw CommandError(std::string("REPFREE_MAX_NODES is not a number: ") + env);
  }
  return value;
}

// Equivalence classes that survive the grammar text format: every member
// must actually appear in the serialized rules, otherwise the class could
// not be checked against the parsed-back grammar.
Equivalence serializable_classes(const Grammar& g, const Equivalence& eq) {
  std::set<std::string> present{g.start};
  for (const Rule& r : g.rules) {
    present.insert(r.lhs);
    if (r.rhs) present.insert(*r.rhs);
  }
  Equivalence out;
  for (const auto& members : eq.classes) {
    bool keep = members.size() > 1;
    for (const auto& name : members) keep = keep && present.count(name) > 0;
    if (keep) out.classes.push_back(members);
  }
  return out;
}

int do_reduce(const std::string& formula_path, const std::string& out_path,
              bool reversed, bool primed, const std::string& eq_out,
              const std::string& layout_out, std::ostream& out) {
  CnfFormula f = load_formula(formula_path);
  Grammar g;
  ReductionLayout layout;
  if (primed) {
    PrimedReduction r = build_primed(f);
    g = std::move(r.grammar);
    layout = std::move(r.layout);
    std::string eq_path = eq_out.empty() ? out_path + ".eq" : eq_out;
    write_file(eq_path, format_equivalence(serializable_classes(g, r.equivalence)));
  } else {
    Reduction r = reversed ? build_reversed_grammar(f) : build_grammar(f);
    g = std::move(r.grammar);
    layout = std::move(r.layout);
  }
  write_file(out_path, format_grammar(g));
  if (!layout_out.empty()) {
    write_file(layout_out, format_layout(g, layout));
  }
  out << target_word(f) << "\n";
  return exit_yes;
}

int do_decide(const std::string& grammar_path, const std::string& word,
              const std::string& eq_path, std::uint64_t max_nodes,
              bool witness, bool stats, std::ostream& out, std::ostream& err) {
  Grammar g = load_grammar(grammar_path);
  SearchBudget budget{max_nodes, OnExceed::report_unknown};
  DecideResult result;
  if (eq_path.empty()) {
    result = decide_repfree(g, word, budget);
  } else {
    result = decide_repfree_mod(g, load_equivalence(eq_path, g), word, budget);
  }
  if (stats) err << format_stats(result.stats);
  switch (result.outcome) {
    case Outcome::found:
      out << "yes\n";
      if (witness) out << format_derivation(*result.witness) << "\n";
      return exit_yes;
    case Outcome::absent:
      out << "no\n";
      return exit_no;
    case Outcome::unknown:
    default:
      out << "unknown\n";
      return exit_budget;
  }
}

int do_longest(const std::string& grammar_path, const std::string& require_str,
               const std::string& eq_path, std::uint64_t max_nodes,
               std::ostream& out) {
  Grammar g = load_grammar(grammar_path);
  std::optional<char> required;
  if (!require_str.empty()) {
    if (require_str.size() != 1) {
      throw CommandError("--require takes a single terminal character");
    }
    required = require_str[0];
  }
  SearchBudget budget{max_nodes, OnExceed::error};
  std::optional<LongestWord> best;
  if (eq_path.empty()) {
    best = longest_repfree(g, required, budget);
  } else {
    best = longest_repfree(g, load_equivalence(eq_path, g), required, budget);
  }
  if (!best) {
    out << "none\n";
    return exit_no;
  }
  out << best->word.size() << " " << best->word << "\n";
  return exit_yes;
}

int do_sat(const std::string& formula_path, bool assign, std::ostream& out) {
  CnfFormula f = load_formula(formula_path);
  std::optional<Assignment> a = brute_force_sat(f);
  if (!a) {
    out << "unsat\n";
    return exit_no;
  }
  out << "sat\n";
  if (assign) {
    out << "assign";
    for (bool v : a->values) out << " " << (v ? 1 : 0);
    out << "\n";
  }
  return exit_yes;
}

int do_quotient(const std::string& grammar_path, const std::string& eq_path,
                const std::string& out_path) {
  Grammar g = load_grammar(grammar_path);
  Equivalence eq = load_equivalence(eq_path, g);
  write_file(out_path, format_grammar(quotient(g, eq)));
  return exit_yes;
}

int do_verify(const std::string& formula_path, std::uint64_t max_nodes,
              std::ostream& out, std::ostream& err) {
  CnfFormula f = load_formula(formula_path);
  Reduction r = build_grammar(f);
  Word omega = target_word(f);
  out << "formula " << format_formula(f) << "\n";
  out << "target " << omega << "\n";

  DecideResult decided =
      decide_repfree(r.grammar, omega, SearchBudget{max_nodes, OnExceed::report_unknown});
  if (decided.outcome == Outcome::unknown) {
    err << "search budget exceeded; verification inconclusive\n";
    return exit_budget;
  }
  std::optional<Assignment> sat = brute_force_sat(f);
  out << "decide " << (decided.outcome == Outcome::found ? "yes" : "no") << "\n";
  out << "sat " << (sat ? "yes" : "no") << "\n";

  bool pass = (decided.outcome == Outcome::found) == sat.has_value();
  if (decided.outcome == Outcome::found) {
    Assignment extracted = derivation_to_assignment(f, *decided.witness);
    bool ok = evaluate(f, extracted);
    out << "witness-assignment " << (ok ? "ok" : "mismatch") << "\n";
    pass = pass && ok;
  }
  if (sat) {
    bool ok = false;
    try {
      Derivation d = assignment_to_derivation(f, *sat);
      ok = is_repetition_free(r.grammar, d) && replay(r.grammar, d) == omega;
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    out << "roundtrip " << (ok ? "ok" : "broken") << "\n";
    pass = pass && ok;
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? exit_yes : exit_no;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"repetition-free derivability for regular word grammars"};
  app.name("repfree");
  app.require_subcommand(1);

  std::string formula_path, grammar_path, eq_path, out_path, eq_out, layout_out;
  std::string word, require_str;
  bool reversed = false, primed = false, witness = false, stats = false;
  bool assign = false;
  std::uint64_t max_nodes = 0;  // filled after parse so env errors are reported

  CLI::App* reduce = app.add_subcommand(
      "reduce", "Build the word grammar encoding a 3-CNF formula");
  reduce->add_option("formula", formula_path, "DIMACS CNF file")->required();
  reduce->add_option("-o,--output", out_path, "grammar file to write")->required();
  CLI::Option* rev_flag =
      reduce->add_flag("--reversed", reversed, "walk chain blocks in reverse");
  CLI::Option* primed_flag = reduce->add_flag(
      "--primed", primed,
      "single-word variant with primed copies; also writes an equivalence file");
  rev_flag->excludes(primed_flag);
  reduce->add_option("--eq-out", eq_out,
                     "equivalence file for --primed (default: <output>.eq)");
  reduce->add_option("--layout-out", layout_out,
                     "write a name/role listing for debugging");

  CLI::App* decide = app.add_subcommand(
      "decide", "Is the word derivable without repeating a nonterminal?");
  decide->add_option("grammar", grammar_path, "grammar file")->required();
  decide->add_option("word", word, "word to derive")->required();
  decide->add_option("--eq", eq_path, "equivalence file (repetition modulo classes)");
  decide->add_flag("--witness", witness, "print a witness derivation");
  decide->add_flag("--stats", stats, "print search statistics to stderr");
  CLI::Option* decide_nodes =
      decide->add_option("--max-nodes", max_nodes, "search node budget");

  CLI::App* longest = app.add_subcommand(
      "longest", "Longest repetition-free derivable word");
  longest->add_option("grammar", grammar_path, "grammar file")->required();
  longest->add_option("--require", require_str,
                      "only words containing this terminal");
  longest->add_option("--eq", eq_path, "equivalence file");
  CLI::Option* longest_nodes =
      longest->add_option("--max-nodes", max_nodes, "search node budget");

  CLI::App* sat = app.add_subcommand("sat", "Brute-force satisfiability");
  sat->add_option("formula", formula_path, "DIMACS CNF file")->required();
  sat->add_flag("--assign", assign, "print the first satisfying assignment");

  CLI::App* quot = app.add_subcommand(
      "quotient", "Collapse a grammar along an equivalence");
  quot->add_option("grammar", grammar_path, "grammar file")->required();
  quot->add_option("equivalence", eq_path, "equivalence file")->required();
  quot->add_option("-o,--output", out_path, "grammar file to write")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "Round-trip a formula through the reduction and cross-check");
  verify->add_option("formula", formula_path, "DIMACS CNF file")->required();
  CLI::Option* verify_nodes =
      verify->add_option("--max-nodes", max_nodes, "search node budget");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_yes : exit_usage;
  }

  try {
    if (!decide_nodes->count() && !longest_nodes->count() &&
        !verify_nodes->count()) {
      max_nodes = default_max_nodes();
    }
    if (app.got_subcommand(reduce)) {
      return do_reduce(formula_path, out_path, reversed, primed, eq_out,
                       layout_out, out);
    }
    if (app.got_subcommand(decide)) {
      return do_decide(grammar_path, word, eq_path, max_nodes, witness, stats,
                       out, err);
    }
    if (app.got_subcommand(longest)) {
      return do_longest(grammar_path, require_str, eq_path, max_nodes, out);
    }
    if (app.got_subcommand(sat)) {
      return do_sat(formula_path, assign, out);
    }
    if (app.got_subcommand(quot)) {
      return do_quotient(grammar_path, eq_path, out_path);
    }
    if (app.got_subcommand(verify)) {
      return do_verify(formula_path, max_nodes, out, err);
    }
    err << "no subcommand given\n";
    return exit_usage;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return exit_budget;
  } catch (const CommandError& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace repfree::cli
