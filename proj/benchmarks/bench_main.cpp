#include <benchmark/benchmark.h>

#include "condlab/estimators.hpp"
#include "condlab/instances.hpp"
#include "condlab/testers.hpp"

using namespace condlab;

namespace {

const DiscreteDistribution& geometric16() {
  static auto d = instances::geometric_hard(1 << 16, 16);
  return d;
}

const IndexSet& odd_half16() {
  static IndexSet s = [] {
    std::vector<uint32_t> v;
    for (uint32_t j = 1; j <= (1u << 16); j += 2) v.push_back(j);
    return IndexSet(std::move(v));
  }();
  return s;
}

void BM_CondGeometricHalfSet(benchmark::State& state) {
  OracleSession session(geometric16(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(session.cond(odd_half16()));
}
BENCHMARK(BM_CondGeometricHalfSet);

void BM_MassGeometricHalfSet(benchmark::State& state) {
  OracleSession session(geometric16(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(session.set_eval(odd_half16()));
}
BENCHMARK(BM_MassGeometricHalfSet);

void BM_ConstantFactorEstimate(benchmark::State& state) {
  Rng gen(3);
  auto d = instances::uniform_random_support(1 << 16, 9000, gen);
  uint64_t seed = 0;
  for (auto _ : state) {
    OracleSession session(d, Rng::mix(seed));
    Rng rng(Rng::mix(seed + 1));
    seed += 2;
    benchmark::DoNotOptimize(estimate_support_constant(session, rng));
  }
}
BENCHMARK(BM_ConstantFactorEstimate);

void BM_EpsEstimate(benchmark::State& state) {
  Rng gen(4);
  auto d = instances::uniform_random_support(1 << 14, 3000, gen);
  uint64_t seed = 0;
  for (auto _ : state) {
    OracleSession session(d, Rng::mix(seed));
    Rng rng(Rng::mix(seed + 1));
    seed += 2;
    benchmark::DoNotOptimize(estimate_support_eps(session, 0.5, rng));
  }
}
BENCHMARK(BM_EpsEstimate);

void BM_L2Sketch(benchmark::State& state) {
  auto d = DiscreteDistribution::uniform(1 << 10);
  uint64_t seed = 0;
  for (auto _ : state) {
    OracleSession session(d, Rng::mix(seed));
    Rng rng(Rng::mix(seed + 1));
    seed += 2;
    benchmark::DoNotOptimize(estimate_l2_squared(session, 0.5, rng));
  }
}
BENCHMARK(BM_L2Sketch);

void BM_FourWiseSign(benchmark::State& state) {
  Rng rng(5);
  FourWiseSignHash h = FourWiseSignHash::draw(16, rng);
  uint32_t j = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.sign(j));
    j = j % (1u << 16) + 1;
  }
}
BENCHMARK(BM_FourWiseSign);

}  // namespace

BENCHMARK_MAIN();
