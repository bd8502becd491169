#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "hypspec/certify.hpp"
#include "hypspec/cheeger.hpp"
#include "hypspec/eigensolver.hpp"
#include "hypspec/family.hpp"
#include "hypspec/partition.hpp"
#include "hypspec/spectral.hpp"
#include "hypspec/systole.hpp"

using namespace hypspec;

namespace {

Mesh family_mesh(int k, int l, int levels) {
  Mesh m = coarse_mesh(assemble(build_prop1_surface(k, l)));
  for (int i = 0; i < levels; ++i) m = m.refined();
  return m;
}

void BM_Refine(benchmark::State& state) {
  const Mesh m = family_mesh(2, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(m.refined());
  state.SetItemsProcessed(state.iterations() * m.triangle_count());
}
BENCHMARK(BM_Refine)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_AssembleFem(benchmark::State& state) {
  const Mesh m = family_mesh(2, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_fem(m));
  state.SetItemsProcessed(state.iterations() * m.triangle_count());
}
BENCHMARK(BM_AssembleFem)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_LowestEigs(benchmark::State& state) {
  const SpectralPair p = assemble_fem(family_mesh(2, 2, static_cast<int>(state.range(0))));
  EigenOptions opt;
  opt.dense_threshold = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lowest_eigs(p, 6, opt));
  state.counters["vertices"] = p.size();
}
BENCHMARK(BM_LowestEigs)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_DenseEigs(benchmark::State& state) {
  const SpectralPair p = assemble_fem(family_mesh(1, 1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigs(p));
  state.counters["vertices"] = p.size();
}
BENCHMARK(BM_DenseEigs)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_Partition(benchmark::State& state) {
  const TrigonGraph g = trigon_graph(family_mesh(static_cast<int>(state.range(0)), 4, 0));
  const BoundedGraph bg = to_bounded_graph(g);
  for (auto _ : state) benchmark::DoNotOptimize(partition_bounded(bg, 2));
  state.counters["cells"] = g.size();
}
BENCHMARK(BM_Partition)->RangeMultiplier(2)->Range(2, 32);

void BM_ExactCheeger(benchmark::State& state) {
  const Mesh m = family_mesh(3, 2, 0);
  std::vector<int> cells(static_cast<std::size_t>(state.range(0)));
  std::iota(cells.begin(), cells.end(), 0);
  const TrigonGraph g = induced_subgraph(trigon_graph(m), cells);
  for (auto _ : state) benchmark::DoNotOptimize(exact_cheeger(g));
}
BENCHMARK(BM_ExactCheeger)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_Systole(benchmark::State& state) {
  const Mesh m = family_mesh(1, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(systole_upper_bound(m));
  state.counters["vertices"] = m.vertex_count();
}
BENCHMARK(BM_Systole)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
