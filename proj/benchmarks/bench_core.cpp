#include <benchmark/benchmark.h>

#include "flosim/estimator.hpp"
#include "flosim/random.hpp"

using namespace flosim;

namespace {

GaussianDesc random_state(int m, Rng& rng) { return canonical_from_rotation(m, random_special_orthogonal(2 * m, rng)); }

void BM_Pfaffian(benchmark::State& st) {
  Rng rng(1);
  Mat a = random_antisym(st.range(0), rng);
  for (auto _ : st) benchmark::DoNotOptimize(pfaffian(a));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Pfaffian)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_KakSign(benchmark::State& st) {
  Rng rng(2);
  Mat alpha = random_antisym(2 * st.range(0), rng);
  for (auto _ : st) benchmark::DoNotOptimize(kak_flo_with_sign(alpha));
}
BENCHMARK(BM_KakSign)->RangeMultiplier(2)->Range(4, 64);

void BM_ApplyElementary(benchmark::State& st) {
  Rng rng(3);
  const int m = static_cast<int>(st.range(0));
  GaussianDesc g = random_state(m, rng);
  for (auto _ : st) benchmark::DoNotOptimize(apply_elementary(g, 0.37, 1, 2 * m - 2));
  st.SetComplexityN(m);
}
BENCHMARK(BM_ApplyElementary)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_GaussianOverlap(benchmark::State& st) {
  Rng rng(4);
  const int m = static_cast<int>(st.range(0));
  GaussianDesc a = random_state(m, rng), b = random_state(m, rng);
  for (auto _ : st) benchmark::DoNotOptimize(gaussian_overlap(a, b));
  st.SetComplexityN(m);
}
BENCHMARK(BM_GaussianOverlap)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_AlphaY(benchmark::State& st) {
  Rng rng(5);
  const int k = static_cast<int>(st.range(0));
  Circuit c = random_circuit(8, 20, std::vector<double>(k, M_PI / 3), rng);
  GadgetizedProgram p = gadgetize(c);
  GaussianDesc psi = evolve_program(p);
  std::vector<int> y(k, 0);
  for (auto _ : st) benchmark::DoNotOptimize(alpha_y(p, psi, y));
}
BENCHMARK(BM_AlphaY)->DenseRange(1, 4);

void BM_NormSample(benchmark::State& st) {
  Rng rng(6);
  const int m = static_cast<int>(st.range(0));
  GaussianDesc psi = random_state(m, rng);
  std::vector<int> fixed(m, kUnmeasured);
  for (auto _ : st) benchmark::DoNotOptimize(norm_sample(fixed, {{1.0, psi}}, rng));
}
BENCHMARK(BM_NormSample)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
