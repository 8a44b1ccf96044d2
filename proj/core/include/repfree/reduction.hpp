#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "repfree/cnf.hpp"
#include "repfree/grammar.hpp"

namespace repfree {

// Where a nonterminal sits in a reduction grammar.
struct Role {
  enum class Kind { S, T, X, Xbar };
  Kind kind = Kind::S;
  int i = 0;      // variable index for X/Xbar, stage index for S
  int j = 0;      // clause index for X/Xbar/T
  bool primed = false;

  bool operator==(const Role&) const = default;
};

// Name bookkeeping for a grammar produced from a formula with m variables
// and n clauses. Naming scheme: S0..Sm, T0..Tn, X_<i>_<j>, Xb_<i>_<j>, and
// a `_p` suffix for primed copies.
struct ReductionLayout {
  int var_count = 0;
  int clause_count = 0;
  std::vector<std::string> s_names;                    // [0..m]
  std::vector<std::string> t_names;                    // [0..n]
  std::vector<std::vector<std::string>> x_names;       // [i-1][j-1]
  std::vector<std::vector<std::string>> xbar_names;    // [i-1][j-1]
  // gamma[j-1][k-1]: the chain nonterminal wired to slot k of clause j.
  std::vector<std::array<std::string, 3>> gamma;
  std::map<std::string, Role> roles;
};

struct Reduction {
  Grammar grammar;
  ReductionLayout layout;
};

struct PrimedReduction {
  Grammar grammar;
  Equivalence equivalence;
  ReductionLayout layout;
};

// Builds the word grammar whose repetition-free derivations mirror the
// satisfying assignments of `f`.
//
// The upper part emits `a`s: one chain block per variable x_i, entered from
// S_{i-1} with a choice between the plain chain X_i1..X_in and the barred
// chain Xb_i1..Xb_in, both rejoining at S_i; then S_m ::= b T0 hands over.
// Threading the barred chain of block i encodes x_i = 1. The lower part
// emits (ce)^n d: T_{j-1} ::= c gamma(j,k) and gamma(j,k) ::= e T_j for each
// literal slot k of clause j, where gamma(j,k) is X_i_j for literal x_i and
// Xb_i_j for ~x_i; finally T_n ::= d. Visiting gamma(j,k) in the lower part
// repeats a nonterminal already used by the upper part exactly when slot k's
// literal is falsified, so a repetition-free derivation of the target word
// exists iff the formula is satisfiable.
//
// Rules appear family by family in the order above; duplicates (possible
// only when a clause repeats a literal) are collapsed. With three distinct
// literals per clause the rule count is 2m(n+1) + 6n + 2.
//
// A formula with no clauses degenerates: there are no chain blocks, so for
// m >= 1 the start symbol has no rules and the language is empty.
Reduction build_grammar(const CnfFormula& f);

// Same gadget with every chain block walked in reverse: S_{i-1} enters at
// X_in / Xb_in and the chain descends to X_i1 / Xb_i1 before rejoining at
// S_i. The lower part is identical to build_grammar's. Word lengths of
// repetition-free derivations then become non-trivial: walking a block is
// only partial when the lower part is entered mid-chain.
Reduction build_reversed_grammar(const CnfFormula& f);

// Variant whose language is exactly one word regardless of `f`: the lower
// part is wired to fresh primed copies X_<i>_<j>_p / Xb_<i>_<j>_p instead of
// the upper-part chain nonterminals, which makes the grammar acyclic. The
// returned equivalence pairs each primed copy with its original (2mn
// two-element classes); repetition-free derivability modulo it restores the
// original problem, and quotienting by it reproduces build_grammar(f).
PrimedReduction build_primed(const CnfFormula& f);

// The word whose repetition-free derivability encodes satisfiability:
// a^{(n+1)m} b (ce)^n d.
Word target_word(const CnfFormula& f);

// (n+1)(m+2): the length of target_word, and the upper bound on
// repetition-free derivable words for these grammars.
int length_bound(const CnfFormula& f);

// Collapses a grammar along an equivalence: nonterminals become class
// representatives (the class member appearing first in g.nonterminals),
// rules are rewritten classwise in their original order, and rules that
// become identical are collapsed keeping the first. Every word of g remains
// a word of the quotient. Throws std::invalid_argument when `eq` fails
// validate_equivalence.
Grammar quotient(const Grammar& g, const Equivalence& eq);

// The repetition-free derivation of target_word(f) encoding a satisfying
// assignment: block i threads its barred chain iff a sets x_i = 1, and
// clause j hops through gamma(j,k) for the lowest satisfied slot k.
// Indices refer to build_grammar(f).grammar. Throws std::invalid_argument
// when `a` does not satisfy f, or when f has variables but no clauses (the
// target word is not derivable at all then).
Derivation assignment_to_derivation(const CnfFormula& f, const Assignment& a);

// Reads an assignment back off any derivation of target_word(f): x_i = 1
// iff some Xb_i_* occurs among the steps before the b-emitting one. When
// the derivation is repetition-free the result satisfies f. Throws
// std::invalid_argument when the derivation does not replay to the target
// word.
Assignment derivation_to_assignment(const CnfFormula& f, const Derivation& d);

// Progress bookkeeping for derivations in a build_grammar output. Each
// intermediate word gets a pair:
//   s* = how many distinct S_i occurred so far (the start S0 counts),
//   j* = clause progress of the current nonterminal: j at T_j, X_i_j or
//        Xb_i_j, 0 at any S_i, and n once only terminals remain.
// `monotone` is true iff the pair strictly grows (lexicographically) on
// every a- or c-emitting step and stays put on every b-, d- or e-emitting
// step. Repetition-free or not, any derivation of the grammar family built
// here satisfies the bounds 1 <= s* <= m+1 and 0 <= j* <= n.
struct PairTrace {
  std::vector<std::pair<int, int>> pairs;  // one per intermediate word
  bool monotone = false;
};

PairTrace pair_trace(const Grammar& g, const ReductionLayout& layout,
                     const Derivation& d);

// Side-car listing for debugging: one line per nonterminal, in grammar
// order, as "<name>\t<role>", e.g. "Xb_2_1\tXb(2,1)".
std::string format_layout(const Grammar& g, const ReductionLayout& layout);

}  // namespace repfree
