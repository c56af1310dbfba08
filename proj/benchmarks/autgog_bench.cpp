#include <benchmark/benchmark.h>

#include <string>

#include "autgog/bstree.hpp"
#include "autgog/deploy.hpp"
#include "autgog/ygraph.hpp"

namespace {

using namespace autgog;

GraphOfGroups const& sl2z() {
  static GraphOfGroups g = load_spec(std::string(AUTGOG_FIXTURES) + "/sl2z.gog");
  return g;
}

// Normal form of a word of length range(0) alternating a and b.
void BM_NormalForm(benchmark::State& state) {
  auto const& g = sl2z();
  Word w;
  Letter a = g.alphabet().parse("a")[0], b = g.alphabet().parse("b")[0];
  for (int i = 0; i < state.range(0); ++i) w.push_back(i % 2 ? b : a);
  for (auto _ : state) benchmark::DoNotOptimize(g.normal_form(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormalForm)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_LanguageDfa(benchmark::State& state) {
  auto const& g = sl2z();
  auto x = default_ygraph(g);
  for (auto _ : state) benchmark::DoNotOptimize(language_dfa(g, x));
}
BENCHMARK(BM_LanguageDfa)->Unit(benchmark::kMillisecond);

void BM_CayleyBall(benchmark::State& state) {
  auto const& g = sl2z();
  for (auto _ : state) {
    CayleyBall ball(g, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ball.size());
  }
}
BENCHMARK(BM_CayleyBall)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

// Grid decision against the exhaustive search on one long pair.
void BM_FellowTravel(benchmark::State& state) {
  auto const& g = sl2z();
  Word w1 = g.alphabet().parse("a b a b a b a b"), w2 = g.alphabet().parse("a b2 a b a b a b b");
  CayleyBall ball(g, 2);
  bool naive = state.range(0);
  for (auto _ : state) {
    if (naive)
      benchmark::DoNotOptimize(async_fellow_travel_naive(g, w1, w2, 2));
    else
      benchmark::DoNotOptimize(async_fellow_travel(g, w1, w2, 2, &ball).ok);
  }
}
BENCHMARK(BM_FellowTravel)->Arg(0)->Arg(1);

void BM_FtConstant(benchmark::State& state) {
  auto const& g = sl2z();
  Dfa lang = language_dfa(g, default_ygraph(g)).dfa;
  for (auto _ : state)
    benchmark::DoNotOptimize(ft_constant(g, lang, static_cast<int>(state.range(0)), false).K);
}
BENCHMARK(BM_FtConstant)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_Deployment(benchmark::State& state) {
  auto const& g = sl2z();
  auto h = language_dfa(g, default_ygraph(g));
  auto positions = tree_positions(g, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto d = deployment_of(h);
    for (auto const& p : positions) d.at(p);
    benchmark::DoNotOptimize(d.distinct_languages());
  }
}
BENCHMARK(BM_Deployment)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_TreeBall(benchmark::State& state) {
  auto const& g = sl2z();
  for (auto _ : state) benchmark::DoNotOptimize(tree_ball(g, static_cast<int>(state.range(0))).vertices.size());
}
BENCHMARK(BM_TreeBall)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
