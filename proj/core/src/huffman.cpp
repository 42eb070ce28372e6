#include <queue>
#include <tuple>

#include "mcpoly/aifv.hpp"

namespace mcpoly::aifv {

HuffmanResult huffman(const SourceSpec& src) {
  const std::size_t n = src.n();
  HuffmanResult out;
  out.lengths.assign(n, 0);
  if (n <= 1) return out;

  // Nodes 0..n-1 are leaves; merged nodes follow. Ties go to the older node.
  std::vector<std::size_t> parent(2 * n - 1, 0);
  using Entry = std::tuple<Rational, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.emplace(src.probabilities[i], i);
  std::size_t next = n;
  while (heap.size() > 1) {
    auto [pa, a] = heap.top();
    heap.pop();
    auto [pb, b] = heap.top();
    heap.pop();
    parent[a] = parent[b] = next;
    heap.emplace(pa + pb, next++);
  }
  const std::size_t root = next - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t len = 0;
    for (std::size_t v = i; v != root; v = parent[v]) ++len;
    out.lengths[i] = len;
    out.cost += src.probabilities[i] * Rational(static_cast<long>(len));
  }
  return out;
}

}  // namespace mcpoly::aifv
