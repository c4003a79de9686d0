#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "arsg/eval.hpp"
#include "arsg/learner.hpp"
#include "arsg/parser.hpp"
#include "arsg/summarizer.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

struct Trained {
  testing::SyntheticCorpus corpus;
  Grammar grammar;
};

const Trained& trained(std::size_t leaves) {
  static std::map<std::size_t, Trained> cache;
  auto it = cache.find(leaves);
  if (it == cache.end()) {
    Trained t{testing::synthetic_corpus(40, 7, leaves, leaves), {}};
    t.grammar = learn(t.corpus.logs);
    it = cache.emplace(leaves, std::move(t)).first;
  }
  return it->second;
}

void BM_Parse(benchmark::State& state) {
  const auto& t = trained(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    auto r = parse(t.grammar, t.corpus.logs[i++ % t.corpus.logs.size()].leaves);
    benchmark::DoNotOptimize(r.root);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Parse)->Arg(8)->Arg(32)->Arg(128);

void BM_Learn(benchmark::State& state) {
  const auto corpus = testing::synthetic_corpus(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(learn(corpus.logs));
}
BENCHMARK(BM_Learn)->Arg(10)->Arg(100);

void BM_SignificanceOrder(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto root = testing::random_tree(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(significance_order(*root));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SignificanceOrder)->Range(16, 4096);

void BM_Rouge(benchmark::State& state) {
  std::mt19937 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto c = testing::random_tokens(rng, n, 50);
  auto r = testing::random_tokens(rng, n, 50);
  c.resize(n, "x");
  r.resize(n, "y");
  const StopSet stop;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rouge2(c, r, stop));
    benchmark::DoNotOptimize(rougeS4(c, r, stop));
  }
}
BENCHMARK(BM_Rouge)->Range(64, 4096);

void BM_TreeScores(benchmark::State& state) {
  std::mt19937 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = testing::random_tree(rng, n);
  const auto b = testing::random_tree(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(tree_scores(*a, *b));
}
BENCHMARK(BM_TreeScores)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
