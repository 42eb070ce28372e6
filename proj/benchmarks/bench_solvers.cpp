#include <benchmark/benchmark.h>

#include "mcpoly/generate.hpp"
#include "mcpoly/solvers.hpp"

namespace {

mcpoly::StateFamilies families(std::size_t m, std::size_t states, std::uint64_t seed) {
  mcpoly::gen::Rng rng(seed);
  return mcpoly::gen::random_families(rng, m, states);
}

void BM_BruteForce(benchmark::State& st) {
  const auto fams = families(static_cast<std::size_t>(st.range(0)), 6, 7);
  mcpoly::BruteForceOptions opts;
  opts.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(mcpoly::brute_force(fams, opts));
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(3);

void BM_Iterate(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  const auto fams = families(m, 12, 7);
  for (auto _ : st)
    benchmark::DoNotOptimize(mcpoly::iterate(fams, mcpoly::PointX(m - 1, mcpoly::Rational(0))));
}
BENCHMARK(BM_Iterate)->Arg(2)->Arg(3)->Arg(4);

void BM_EllipsoidPipeline(benchmark::State& st) {
  const auto fams = families(static_cast<std::size_t>(st.range(0)), 6, 7);
  for (auto _ : st)
    benchmark::DoNotOptimize(mcpoly::solve(fams, mcpoly::Method::Ellipsoid));
}
BENCHMARK(BM_EllipsoidPipeline)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
