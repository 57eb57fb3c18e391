#include <benchmark/benchmark.h>

#include "thetasum/oracle.hpp"
#include "thetasum/theta.hpp"

using namespace thetasum;

namespace {

const Real& arg_a() {
  static const Real a = [] {
    PrecisionScope s(256);
    return Real::parse("0.41421356237309504880168872420969807856967187537694");
  }();
  return a;
}

const Real& arg_b() {
  static const Real b = [] {
    PrecisionScope s(256);
    return Real::parse("0.17320508075688772935274463415058723669428052538103");
  }();
  return b;
}

void BM_direct_serial(benchmark::State& st) {
  OracleCfg cfg;
  cfg.bits_multiplier = 1;
  cfg.base_bits = 128;
  for (auto _ : st) benchmark::DoNotOptimize(direct_theta_all_serial(st.range(0), 0, arg_a(), arg_b(), cfg));
  st.SetComplexityN(st.range(0));
}

void BM_direct_omp(benchmark::State& st) {
  OracleCfg cfg;
  cfg.bits_multiplier = 1;
  cfg.base_bits = 128;
  for (auto _ : st) benchmark::DoNotOptimize(direct_theta_all(st.range(0), 0, arg_a(), arg_b(), cfg));
  st.SetComplexityN(st.range(0));
}

void BM_theta_sum(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(theta_sum(st.range(0), 0, arg_a(), arg_b(), 1e-6));
  st.SetComplexityN(st.range(0));
}

}  // namespace

BENCHMARK(BM_direct_serial)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_direct_omp)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_theta_sum)->RangeMultiplier(100)->Range(10000, 100000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
