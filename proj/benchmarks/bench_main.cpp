#include <benchmark/benchmark.h>

#include <random>

#include "cgauto/compiler.hpp"
#include "cgauto/decision.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/formula.hpp"
#include "cgauto/groups.hpp"
#include "cgauto/presburger.hpp"
#include "cgauto/serialization.hpp"

using namespace cgauto;

namespace {

GroupWord random_word(const GraphAutomaticPresentation& p, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> gen(0, p.generators().size() - 1);
  std::bernoulli_distribution coin(0.5);
  GroupWord w;
  for (std::size_t i = 0; i < length; ++i) w.push_back({p.generators()[gen(rng)].name, coin(rng) ? 1 : -1});
  return w;
}

// Word problem: representative of a random word, by word length.
void BM_HeisenbergCanonicalRep(benchmark::State& state) {
  static const auto h = heisenberg();
  const GroupWord w = random_word(h, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_rep(h, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeisenbergCanonicalRep)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_BaumslagSolitarCanonicalRep(benchmark::State& state) {
  static const auto g = bs1n(2);
  const GroupWord w = random_word(g, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_rep(g, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BaumslagSolitarCanonicalRep)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_BuildHeisenberg(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(heisenberg());
}
BENCHMARK(BM_BuildHeisenberg)->Unit(benchmark::kMillisecond);

void BM_BuildBaumslagSolitar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bs1n(state.range(0)));
}
BENCHMARK(BM_BuildBaumslagSolitar)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Ball(benchmark::State& state) {
  static const auto h = heisenberg();
  for (auto _ : state) benchmark::DoNotOptimize(ball(h, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Ball)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_RelatorHolds(benchmark::State& state) {
  static const auto h = heisenberg();
  const GroupWord r = parse_group_word("A C A^-1 C^-1 B^-1");
  for (auto _ : state) benchmark::DoNotOptimize(relator_holds(h, r));
}
BENCHMARK(BM_RelatorHolds)->Unit(benchmark::kMillisecond);

void BM_Conjugacy(benchmark::State& state) {
  static const auto h = heisenberg();
  const GroupWord a = parse_group_word("A C"), b = parse_group_word("A C B B");
  for (auto _ : state) benchmark::DoNotOptimize(conjugate(h, a, b));
}
BENCHMARK(BM_Conjugacy)->Unit(benchmark::kMillisecond);

void BM_PresburgerDecide(benchmark::State& state) {
  static const auto s = presburger_structure();
  const auto f = parse_formula("A x E y (Add(y,y,x) | E z E o (Add(y,y,z) & One(o) & Add(z,o,x)))");
  for (auto _ : state) benchmark::DoNotOptimize(decide(s, f));
}
BENCHMARK(BM_PresburgerDecide)->Unit(benchmark::kMillisecond);

void BM_AffineRelation(benchmark::State& state) {
  const IntMatrix A{{2, 1}, {1, 1}};
  const std::vector<std::int64_t> c{0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(affine_relation(A, c));
}
BENCHMARK(BM_AffineRelation)->Unit(benchmark::kMillisecond);

void BM_DeterminizeMinimize(benchmark::State& state) {
  // (a|b)* a (a|b)^(n-1): the subset construction doubles with n
  const Alphabet ab{"a", "b"};
  const auto n = static_cast<State>(state.range(0));
  NfaBuilder b(ab, n + 1);
  b.add_initial(0);
  b.set_accepting(n);
  b.add_edge(0, 0, 0);
  b.add_edge(0, 1, 0);
  b.add_edge(0, 0, 1);
  for (State q = 1; q < n; ++q) {
    b.add_edge(q, 0, q + 1);
    b.add_edge(q, 1, q + 1);
  }
  const Nfa nfa = b.build();
  for (auto _ : state) benchmark::DoNotOptimize(minimal_dfa(nfa));
}
BENCHMARK(BM_DeterminizeMinimize)->DenseRange(4, 12, 4);

void BM_SaveLoadPresentation(benchmark::State& state) {
  static const auto h = heisenberg();
  for (auto _ : state) benchmark::DoNotOptimize(load_presentation(save_presentation(h)));
}
BENCHMARK(BM_SaveLoadPresentation)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
