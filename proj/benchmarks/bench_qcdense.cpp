#include <benchmark/benchmark.h>

#include "qcdense/determining.hpp"
#include "qcdense/qc_ops.hpp"
#include "qcdense/solenoid.hpp"
#include "qcdense/subset_search.hpp"

using namespace qcdense;

namespace {

void BM_PolarZp5(benchmark::State& state) {
  const std::int64_t p = state.range(0);
  Int modulus = int_pow(p, 5);
  FiniteAbelianGroup g({static_cast<std::int64_t>(modulus)});
  FiniteGroupContext ctx(g);
  SuperSequence seq = zp_qc_sequence(p, 5);
  std::vector<GroupElement> image;
  for (const ModelPoint& mp : seq.full_point_set()) {
    image.push_back(
        g.reduce({static_cast<std::int64_t>(std::get<Int>(mp.value))}));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(polar_right(ctx, image));
  }
}
BENCHMARK(BM_PolarZp5)->Arg(3)->Arg(7)->Arg(11);

void BM_TorusWitnesses(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  CompactModel t = CompactModel::torus();
  SuperSequence seq = torus_qc_sequence(n);
  CharBound bound;
  bound.torus_m_max = n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify_qc_dense_up_to(t, seq.full_point_set(), bound));
  }
}
BENCHMARK(BM_TorusWitnesses)->Arg(100)->Arg(1000);

void BM_QhatVerify(benchmark::State& state) {
  const std::int64_t height = state.range(0);
  std::vector<SolenoidElement> x = qhat_qc_sequence(height, height, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_qhat_qc_dense(x, height));
  }
}
BENCHMARK(BM_QhatVerify)->Arg(10)->Arg(30);

void BM_Theorem1Row(benchmark::State& state) {
  const std::int64_t box = state.range(0);
  std::vector<std::vector<Rat>> x{{Rat(1, 6), Rat(0)}, {Rat(0), Rat(1, 10)}};
  OpenArc u((Rat(1, 4)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem1_experiment(2, x, u, {box}));
  }
}
BENCHMARK(BM_Theorem1Row)->Arg(100)->Arg(1000);

void BM_MinDenseSearch(benchmark::State& state) {
  FiniteAbelianGroup g({state.range(0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_min_dense(g));
  }
}
BENCHMARK(BM_MinDenseSearch)->Arg(12)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
