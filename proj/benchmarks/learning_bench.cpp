#include <benchmark/benchmark.h>

#include "cptforge/dirichlet.hpp"
#include "cptforge/local_bayes.hpp"
#include "cptforge/mle.hpp"
#include "cptforge/random.hpp"

namespace {

using namespace cptforge;

void BM_MleNaturality(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Integer> counts(n);
  std::vector<std::size_t> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = static_cast<long>(3 * i + 1);
    targets[i] = i % 3;
  }
  const Multiset phi(counts);
  const FinMap h(targets, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mle(ms_map(h, phi)) == dist_map(h, mle(phi)));
  }
}
BENCHMARK(BM_MleNaturality)->Arg(6)->Arg(64)->Arg(1024);

void BM_MleDecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Integer> cells(n * n);
  for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = static_cast<long>(k % 7 + 1);
  const JointMultiset phi(n, n, cells);
  for (auto _ : state) benchmark::DoNotOptimize(mle_decompose(phi));
}
BENCHMARK(BM_MleDecompose)->Arg(2)->Arg(5)->Arg(20);

void BM_SimplexQuadrature(benchmark::State& state) {
  const DirichletPdf pdf(HyperParams{3, 4, 5});
  const auto resolution = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simplex_quadrature(pdf, 3, resolution));
  state.SetItemsProcessed(state.iterations() * resolution * resolution);
}
BENCHMARK(BM_SimplexQuadrature)->Arg(100)->Arg(400);

void BM_DirichletSample(benchmark::State& state) {
  const HyperParams alpha{2, 3, 1, 4, 1, 1};
  Rng rng(42);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_sample(alpha, rng));
}
BENCHMARK(BM_DirichletSample);

void BM_PdfFactorization(benchmark::State& state) {
  const HyperParams alpha{10, 35, 25, 5, 10, 15};
  const SimplexPoint x({0.10, 0.35, 0.25, 0.05, 0.10, 0.15});
  for (auto _ : state) benchmark::DoNotOptimize(pdf_factorization_check(alpha, x));
}
BENCHMARK(BM_PdfFactorization);

}  // namespace
BENCHMARK_MAIN();
