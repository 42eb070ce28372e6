#include <benchmark/benchmark.h>

#include "mcpoly/generate.hpp"
#include "mcpoly/polytope.hpp"

namespace {

mcpoly::StateFamilies families(std::size_t m, std::size_t states) {
  mcpoly::gen::Rng rng(42);
  return mcpoly::gen::random_families(rng, m, states);
}

void BM_Envelope(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  const auto fams = families(m, static_cast<std::size_t>(st.range(1)));
  const mcpoly::PointX x(m - 1, mcpoly::Rational(1, 3));
  for (auto _ : st) benchmark::DoNotOptimize(mcpoly::envelope(fams, x));
}
BENCHMARK(BM_Envelope)->Args({2, 8})->Args({3, 16})->Args({4, 64});

void BM_FloatEnvelope(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  const mcpoly::FloatFamilies fams(families(m, static_cast<std::size_t>(st.range(1))));
  const std::vector<double> x(m - 1, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(fams.envelope(x));
}
BENCHMARK(BM_FloatEnvelope)->Args({2, 8})->Args({3, 16})->Args({4, 64});

void BM_Separate(benchmark::State& st) {
  const auto fams = families(3, 16);
  const auto box = mcpoly::Box::unit(3);
  const mcpoly::QueryPoint z{{mcpoly::Rational(1, 2), mcpoly::Rational(1, 4)},
                             mcpoly::Rational(20)};
  for (auto _ : st) benchmark::DoNotOptimize(mcpoly::separate(fams, z, box, 0));
}
BENCHMARK(BM_Separate);

}  // namespace
