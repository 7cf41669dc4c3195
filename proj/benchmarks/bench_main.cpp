#include <benchmark/benchmark.h>

#include <cstdint>

#include "collatz_cover/arith.hpp"
#include "collatz_cover/covering.hpp"
#include "collatz_cover/mapgen.hpp"
#include "collatz_cover/sigma_cache.hpp"
#include "collatz_cover/verify.hpp"

namespace {

using namespace collatz_cover;

void BM_SigmaNoCache(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d <= bound; d += 2) total += sigma_infinity(from_u64(d));
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bound / 2));
}
BENCHMARK(BM_SigmaNoCache)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_SigmaColdCache(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    SigmaCache cache;
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d <= bound; d += 2) total += sigma_infinity(from_u64(d), &cache);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bound / 2));
}
BENCHMARK(BM_SigmaColdCache)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_SigmaWarmCache(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  SigmaCache cache;
  for (std::uint64_t d = 1; d <= bound; d += 2) (void)sigma_infinity(from_u64(d), &cache);
  for (auto _ : state) {
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d <= bound; d += 2) total += sigma_infinity(from_u64(d), &cache);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bound / 2));
}
BENCHMARK(BM_SigmaWarmCache)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_SigmaBigInput(benchmark::State& state) {
  const BigInt d = pow2(static_cast<unsigned>(state.range(0))) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(sigma_infinity(d));
}
BENCHMARK(BM_SigmaBigInput)->Arg(64)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_DeriveProfile(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    for (unsigned i = 1; i <= kClassCount; ++i) benchmark::DoNotOptimize(derive_profile(i, m));
  }
}
BENCHMARK(BM_DeriveProfile)->Arg(18)->Arg(64)->Arg(512);

void BM_ProfileTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ProfileTable(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_ProfileTable)->Arg(18)->Arg(40);

void BM_Classify(benchmark::State& state) {
  const ProfileTable table(18);
  for (auto _ : state) {
    for (std::uint64_t d = 1; d <= 20'001; d += 2) benchmark::DoNotOptimize(classify(OddInt(d), table));
  }
  state.SetItemsProcessed(state.iterations() * 10'001);
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_BuildSchema(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_schema(18));
}
BENCHMARK(BM_BuildSchema);

void BM_CoverAudit(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover_audit(bound, 18));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bound / 2));
}
BENCHMARK(BM_CoverAudit)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_VerifyRange(benchmark::State& state) {
  RangeOptions options;
  options.first = 1;
  options.last = 200'000;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_range(options));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_VerifyRange)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
