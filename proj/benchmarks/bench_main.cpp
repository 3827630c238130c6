#include <benchmark/benchmark.h>

#include <random>

#include "gl1hom/complex.hpp"
#include "gl1hom/eval.hpp"
#include "gl1hom/homology.hpp"
#include "gl1hom/linalg.hpp"
#include "gl1hom/transfer.hpp"

using namespace gl1hom;

namespace {

const char* const kBraids[] = {"AAA", "AbAb", "AAAAA", "AAABaB", "AAAAAAA", "ABABABAB", "AABaBBCbC"};

void BM_Compute(benchmark::State& state) {
  const BraidWord w = parse_braid(kBraids[state.range(0)]);
  for (auto _ : state) {
    GramCache::shared().clear();
    benchmark::DoNotOptimize(poincare(build_complex(w, Calibration::fitted())));
  }
  state.SetLabel(kBraids[state.range(0)]);
}
BENCHMARK(BM_Compute)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_ComputeWarmCache(benchmark::State& state) {
  const BraidWord w = parse_braid("ABABABAB");
  build_complex(w, Calibration::fitted());
  for (auto _ : state) benchmark::DoNotOptimize(poincare(build_complex(w, Calibration::fitted())));
}
BENCHMARK(BM_ComputeWarmCache)->Unit(benchmark::kMillisecond);

void BM_TransferTable(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  Signature sig{4, {}};
  for (int j = 0; j < t; ++j) sig.positions.push_back(1 + j % 3);
  for (auto _ : state) {
    TransferEngine e(sig);
    benchmark::DoNotOptimize(e.table());
  }
}
BENCHMARK(BM_TransferTable)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Evaluate1(benchmark::State& state) {
  auto res = std::make_shared<const Resolution>(parse_braid("AbAbCbCa"), BitVector{1, 0, 1, 0, 1, 0, 1, 0});
  Decoration d(res);
  for (const auto& p : dur_positions(*res)) d.add_dot(p.gap, p.strand);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate1(d));
}
BENCHMARK(BM_Evaluate1);

SparseIntMatrix random_sparse(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<SparseIntMatrix::Triplet> t;
  for (std::size_t r = 0; r < n; ++r)
    for (int k = 0; k < 4; ++k)
      t.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(rng() % n),
                   BigInt(static_cast<long>(rng() % 7) - 3)});
  return SparseIntMatrix::from_triplets(n, n, std::move(t));
}

void BM_RankRational(benchmark::State& state) {
  const auto m = random_sparse(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_rational(m));
}
BENCHMARK(BM_RankRational)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_RankModP(benchmark::State& state) {
  const auto m = random_sparse(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_modp(m, 3));
}
BENCHMARK(BM_RankModP)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
