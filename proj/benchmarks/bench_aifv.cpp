#include <benchmark/benchmark.h>

#include "mcpoly/aifv.hpp"
#include "mcpoly/generate.hpp"
#include "mcpoly/solvers.hpp"

namespace {

using namespace mcpoly::aifv;

void BM_Families(benchmark::State& st) {
  mcpoly::gen::Rng rng(3);
  const auto n = static_cast<std::size_t>(st.range(1));
  const SourceSpec src = mcpoly::gen::random_dyadic_source(rng, n, 6);
  const auto m = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(families_from_source(src, m));
}
BENCHMARK(BM_Families)->Args({2, 4})->Args({2, 6})->Args({3, 5})->Unit(benchmark::kMillisecond);

void BM_AifvSolve(benchmark::State& st) {
  mcpoly::gen::Rng rng(4);
  const SourceSpec src = mcpoly::gen::random_dyadic_source(rng, 5, 6);
  for (auto _ : st) {
    const auto fams = families_from_source(src, 2);
    benchmark::DoNotOptimize(mcpoly::solve(fams, mcpoly::Method::Iterate));
  }
}
BENCHMARK(BM_AifvSolve)->Unit(benchmark::kMillisecond);

Code sample_code() {
  mcpoly::gen::Rng rng(5);
  const SourceSpec src = mcpoly::gen::random_dyadic_source(rng, 5, 5);
  const auto r = mcpoly::solve(families_from_source(src, 2), mcpoly::Method::Iterate);
  Code code{2, src, {}};
  for (const auto& s : r.chain.states) code.trees.push_back(tree_from_label(s.label));
  return code;
}

std::vector<std::size_t> message(std::size_t n, std::size_t len) {
  mcpoly::gen::Rng rng(6);
  std::uniform_int_distribution<std::size_t> sym(0, n - 1);
  std::vector<std::size_t> msg(len);
  for (auto& s : msg) s = sym(rng);
  return msg;
}

void BM_Encode(benchmark::State& st) {
  const Code code = sample_code();
  const auto msg = message(code.source.n(), 4096);
  for (auto _ : st) benchmark::DoNotOptimize(encode(code, msg));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(msg.size()));
}
BENCHMARK(BM_Encode);

void BM_Decode(benchmark::State& st) {
  const Code code = sample_code();
  const auto msg = message(code.source.n(), 4096);
  const std::string bits = encode(code, msg);
  for (auto _ : st) benchmark::DoNotOptimize(decode(code, bits, msg.size()));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(msg.size()));
}
BENCHMARK(BM_Decode);

}  // namespace
