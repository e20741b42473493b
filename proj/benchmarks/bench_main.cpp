#include <benchmark/benchmark.h>

#include <random>

#include "ajsf/automata.hpp"
#include "ajsf/expansion.hpp"
#include "ajsf/spectral.hpp"
#include "ajsf/statistics.hpp"
#include "ajsf/wnaf_roots.hpp"

namespace {

std::vector<ajsf::IntVector> random_inputs(int d, std::size_t count) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> dist(0, (std::int64_t{1} << 40) - 1);
  std::vector<ajsf::IntVector> out(count, ajsf::IntVector(static_cast<std::size_t>(d)));
  for (auto& v : out) {
    for (auto& x : v) x = dist(rng);
  }
  return out;
}

void BM_AjsfWeight(benchmark::State& state) {
  const ajsf::DigitSet ds(-2, 3);
  const auto inputs = random_inputs(static_cast<int>(state.range(0)), 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ajsf::ajsf_weight(inputs[i++ & 1023], ds));
  }
}
BENCHMARK(BM_AjsfWeight)->Arg(1)->Arg(2)->Arg(3);

void BM_TransducerRun(benchmark::State& state) {
  const ajsf::DigitSet ds(-2, 3);
  const int d = static_cast<int>(state.range(0));
  const auto tr = ajsf::ajsf_transducer(ds, d);
  const auto inputs = random_inputs(d, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ajsf::run(tr, inputs[i++ & 1023]));
  }
}
BENCHMARK(BM_TransducerRun)->Arg(1)->Arg(2)->Arg(3);

void BM_TransducerBuild(benchmark::State& state) {
  const ajsf::DigitSet ds(-2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ajsf::ajsf_transducer(ds, static_cast<int>(state.range(0))).num_states());
  }
}
BENCHMARK(BM_TransducerBuild)->Arg(1)->Arg(2)->Arg(3);

void BM_CharPoly(benchmark::State& state) {
  const auto a = ajsf::adjacency(ajsf::ajsf_transducer(ajsf::DigitSet(-2, 3), 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ajsf::char_poly(a).degree_x());
  }
}
BENCHMARK(BM_CharPoly)->Unit(benchmark::kMillisecond);

void BM_ExactMoments(benchmark::State& state) {
  const ajsf::MomentEngine engine(ajsf::ajsf_transducer(ajsf::DigitSet(-2, 3), 2));
  const auto n = std::uint64_t{1} << state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.summatory(n - 1).sum);
  }
}
BENCHMARK(BM_ExactMoments)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_FindRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ajsf::find_roots(static_cast<int>(state.range(0))).delta);
  }
}
BENCHMARK(BM_FindRoots)->Arg(16)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
