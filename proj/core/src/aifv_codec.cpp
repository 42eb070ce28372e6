#include <string>

#include "mcpoly/aifv.hpp"
#include "mcpoly/errors.hpp"

namespace mcpoly::aifv {

namespace {

struct Codeword {
  std::string bits;
  std::size_t degree = 0;
  bool present = false;
};

std::vector<Codeword> codewords(const CodeTree& t, std::size_t n) {
  std::vector<Codeword> out(n);
  std::vector<std::pair<int, std::string>> stack{{0, ""}};
  while (!stack.empty()) {
    auto [id, path] = std::move(stack.back());
    stack.pop_back();
    const Node& nd = t.node(id);
    if (nd.kind == NodeKind::Master && nd.symbol >= 0 &&
        static_cast<std::size_t>(nd.symbol) < n)
      out[static_cast<std::size_t>(nd.symbol)] = {path, nd.degree, true};
    for (int e = 0; e < 2; ++e)
      if (nd.child[e] >= 0)
        stack.emplace_back(nd.child[e], path + static_cast<char>('0' + e));
  }
  return out;
}

void check_shape(const Code& code) {
  if (code.trees.size() != code.m || code.m < 2)
    throw ValidationError("code must have m >= 2 trees");
}

}  // namespace

std::string encode(const Code& code, const std::vector<std::size_t>& message) {
  check_shape(code);
  const std::size_t n = code.source.n();
  std::vector<std::vector<Codeword>> table;
  for (const auto& t : code.trees) table.push_back(codewords(t, n));
  std::string out;
  std::size_t cur = 0;
  for (std::size_t i = 0; i < message.size(); ++i) {
    const std::size_t s = message[i];
    if (s >= n)
      throw UnknownSymbol("message position " + std::to_string(i) +
                          ": symbol index " + std::to_string(s) +
                          " outside the alphabet");
    const Codeword& cw = table[cur][s];
    if (!cw.present)
      throw ValidationError("T_" + std::to_string(cur) + " has no codeword for " +
                            code.source.names[s]);
    out += cw.bits;
    cur = cw.degree;
  }
  return out;
}

std::vector<std::size_t> decode(const Code& code, std::string_view bits,
                                std::optional<std::size_t> count,
                                DecodeStats* stats) {
  check_shape(code);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] != '0' && bits[i] != '1')
      throw MalformedStream("bit " + std::to_string(i) + " is not 0 or 1");

  std::vector<std::size_t> out;
  std::size_t pos = 0;
  std::size_t cur = 0;
  std::size_t empty_run = 0;
  while (count ? out.size() < *count : pos < bits.size()) {
    const CodeTree& t = code.trees[cur];
    int node = 0;
    int last_master = -1;
    std::size_t last_end = pos;
    std::size_t i = pos;
    while (true) {
      const Node& nd = t.node(node);
      if (nd.kind == NodeKind::Master) {
        last_master = node;
        last_end = i;
      }
      if (i >= bits.size()) break;
      const int next = nd.child[bits[i] - '0'];
      ++i;
      if (next < 0) break;
      node = next;
    }
    if (last_master < 0)
      throw MalformedStream("no codeword of T_" + std::to_string(cur) +
                            " matches the bits at offset " +
                            std::to_string(pos));
    if (stats) stats->max_lookahead = std::max(stats->max_lookahead, i - last_end);
    const Node& hit = t.node(last_master);
    if (hit.symbol < 0 || hit.degree >= code.m)
      throw ValidationError("T_" + std::to_string(cur) +
                            " has an unlabeled or out-of-range master node");
    if (last_end == pos) {
      if (++empty_run > code.m)
        throw MalformedStream("decoder made no progress at offset " +
                              std::to_string(pos));
    } else {
      empty_run = 0;
    }
    out.push_back(static_cast<std::size_t>(hit.symbol));
    pos = last_end;
    cur = hit.degree;
  }
  if (pos != bits.size())
    throw MalformedStream(std::to_string(bits.size() - pos) +
                          " bits left after " + std::to_string(out.size()) +
                          " symbols");
  return out;
}

}  // namespace mcpoly::aifv
