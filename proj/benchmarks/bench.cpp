#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "treeprob/bayes.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/mode.hpp"
#include "treeprob/recursions.hpp"
#include "treeprob/seqmodel.hpp"
#include "treeprob/tree.hpp"

using namespace treeprob;

namespace {

TreeDistribution random_dist(const BaseShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> alpha(shape.node_count(), 0.0);
  for (std::uint64_t i = 0; i < shape.node_count(); ++i)
    if (shape.node_at(i).depth() < shape.d_max()) alpha[i] = unif(rng);
  return TreeDistribution(shape, std::move(alpha));
}

void BM_TotalMass(benchmark::State& state) {
  auto d = random_dist(BaseShape(2, static_cast<std::uint32_t>(state.range(0))), 17);
  for (auto _ : state) benchmark::DoNotOptimize(d.total_mass());
}
BENCHMARK(BM_TotalMass)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_Entropy(benchmark::State& state) {
  auto d = random_dist(BaseShape(2, static_cast<std::uint32_t>(state.range(0))), 18);
  for (auto _ : state) benchmark::DoNotOptimize(entropy(d));
}
BENCHMARK(BM_Entropy)->Arg(8)->Arg(12)->Arg(16);

void BM_Mode(benchmark::State& state) {
  auto d = random_dist(BaseShape(2, static_cast<std::uint32_t>(state.range(0))), 19);
  for (auto _ : state) benchmark::DoNotOptimize(mode(d));
}
BENCHMARK(BM_Mode)->Arg(8)->Arg(12)->Arg(16);

void BM_PosteriorPath(benchmark::State& state) {
  const std::uint32_t dm = static_cast<std::uint32_t>(state.range(0));
  auto d = random_dist(BaseShape(2, dm), 20);
  std::vector<std::uint32_t> path(dm, 1);
  auto hp = [](const NodeId& v) { return 0.5 + 0.1 * v.depth(); };
  PathLikelihoodSpec like{NodeId{path}, hp};
  for (auto _ : state) benchmark::DoNotOptimize(posterior_path(d, like));
}
BENCHMARK(BM_PosteriorPath)->Arg(8)->Arg(12)->Arg(16);

void BM_Enumerate(benchmark::State& state) {
  BaseShape shape(2, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subtrees(shape));
}
BENCHMARK(BM_Enumerate)->Arg(2)->Arg(3)->Arg(4);

void BM_CtwSequence(benchmark::State& state) {
  std::mt19937_64 rng(21);
  std::vector<Symbol> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = static_cast<Symbol>(rng() & 1);
  for (auto _ : state) {
    ContextTreeModel m(BaseShape(2, 8));
    benchmark::DoNotOptimize(m.evaluate_sequence(xs));
  }
}
BENCHMARK(BM_CtwSequence)->Arg(1024)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
