#include <benchmark/benchmark.h>

#include "repfree/cnf.hpp"
#include "repfree/grammar.hpp"
#include "repfree/reduction.hpp"
#include "repfree/solver.hpp"

namespace {

using namespace repfree;

// (x1+~x2+x4)(x2+x3+~x4)(~x1+~x2+x4): four variables, three clauses.
CnfFormula example_formula() {
  return CnfFormula{
      4,
      {Clause{{Literal{1, false}, Literal{2, true}, Literal{4, false}}},
       Clause{{Literal{2, false}, Literal{3, false}, Literal{4, true}}},
       Clause{{Literal{1, true}, Literal{2, true}, Literal{4, false}}}}};
}

// A ladder of unsatisfiable formulas: (x1)(~x1)(x2)(~x2)... forces the
// decision search to exhaust every branch.
CnfFormula unsat_formula(int vars) {
  CnfFormula f;
  f.var_count = vars;
  for (int v = 1; v <= vars; ++v) {
    for (bool neg : {false, true}) {
      f.clauses.push_back(
          Clause{{Literal{v, neg}, Literal{v, neg}, Literal{v, neg}}});
    }
  }
  return f;
}

void BM_BuildGrammar(benchmark::State& state) {
  CnfFormula f = example_formula();
  for (auto _ : state) {
    Reduction r = build_grammar(f);
    benchmark::DoNotOptimize(r.grammar.rules.data());
  }
}
BENCHMARK(BM_BuildGrammar);

void BM_DecideTargetWord(benchmark::State& state) {
  CnfFormula f = example_formula();
  Reduction r = build_grammar(f);
  Word omega = target_word(f);
  for (auto _ : state) {
    DecideResult res = decide_repfree(r.grammar, omega);
    benchmark::DoNotOptimize(res.outcome);
  }
}
BENCHMARK(BM_DecideTargetWord);

void BM_DecideUnsat(benchmark::State& state) {
  CnfFormula f = unsat_formula(static_cast<int>(state.range(0)));
  Reduction r = build_grammar(f);
  Word omega = target_word(f);
  for (auto _ : state) {
    DecideResult res = decide_repfree(r.grammar, omega);
    benchmark::DoNotOptimize(res.outcome);
  }
}
BENCHMARK(BM_DecideUnsat)->Arg(2)->Arg(3)->Arg(4);

void BM_BruteForceSat(benchmark::State& state) {
  CnfFormula f = example_formula();
  for (auto _ : state) {
    auto a = brute_force_sat(f);
    benchmark::DoNotOptimize(a.has_value());
  }
}
BENCHMARK(BM_BruteForceSat);

void BM_EnumerateRepfreeWords(benchmark::State& state) {
  CnfFormula f{2,
               {Clause{{Literal{1, false}, Literal{2, true}, Literal{2, false}}},
                Clause{{Literal{1, true}, Literal{2, false}, Literal{1, false}}}}};
  Reduction r = build_grammar(f);
  for (auto _ : state) {
    auto words = enumerate_repfree_words(r.grammar);
    benchmark::DoNotOptimize(words.size());
  }
}
BENCHMARK(BM_EnumerateRepfreeWords);

void BM_Derives(benchmark::State& state) {
  CnfFormula f = example_formula();
  Reduction r = build_grammar(f);
  Word omega = target_word(f);
  for (auto _ : state) {
    bool member = derives(r.grammar, omega);
    benchmark::DoNotOptimize(member);
  }
}
BENCHMARK(BM_Derives);

void BM_LongestRepfree(benchmark::State& state) {
  CnfFormula f = example_formula();
  Reduction r = build_grammar(f);
  for (auto _ : state) {
    auto best = longest_repfree(r.grammar);
    benchmark::DoNotOptimize(best.has_value());
  }
}
BENCHMARK(BM_LongestRepfree);

}  // namespace

BENCHMARK_MAIN();
