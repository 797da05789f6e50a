#include <benchmark/benchmark.h>

#include <random>

#include "kalmar/champions.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/optimizer.hpp"
#include "kalmar/primes.hpp"

namespace {

using kalmar::PrimeSignature;

const PrimeSignature kSig{8, 4, 2, 2, 1, 1};

void BM_MacMahon(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kalmar::kalmar_macmahon(kSig));
}
BENCHMARK(BM_MacMahon);

// fresh memo each round, so this measures the whole recursion
void BM_RecursiveCold(benchmark::State& state) {
  for (auto _ : state) {
    kalmar::KalmarMemo memo;
    benchmark::DoNotOptimize(kalmar::kalmar_recursive(kSig, &memo));
  }
}
BENCHMARK(BM_RecursiveCold);

void BM_SolveC(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(0.2);
  kalmar::RealVector x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) v = e(rng) + 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(kalmar::solve_c(x));
}
BENCHMARK(BM_SolveC)->Arg(3)->Arg(30)->Arg(300);

void BM_Optimum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kalmar::optimum(static_cast<std::size_t>(state.range(0)), 1e4L));
}
BENCHMARK(BM_Optimum)->Arg(10)->Arg(1000);

void BM_Enumerate(benchmark::State& state) {
  kalmar::BigCount bound = 1;
  for (int i = 0; i < state.range(0); ++i) bound *= 10;
  for (auto _ : state) benchmark::DoNotOptimize(kalmar::enumerate_candidates(bound).size());
}
BENCHMARK(BM_Enumerate)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  kalmar::default_primes();  // keep the sieve out of the first timed run
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
