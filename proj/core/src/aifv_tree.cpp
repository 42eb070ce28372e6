#include <algorithm>
#include <cmath>
#include <functional>

#include "mcpoly/aifv.hpp"
#include "mcpoly/errors.hpp"

namespace mcpoly::aifv {

namespace {

std::string default_name(std::size_t i, std::size_t n) {
  if (n <= 26) return std::string(1, static_cast<char>('a' + i));
  return "s" + std::to_string(i);
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : s_(text) {}

  std::vector<Node> run() {
    skip_ws();
    parse_node();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return std::move(nodes_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("tree text at offset " + std::to_string(pos_) + ": " +
                     what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  unsigned number() {
    skip_ws();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return static_cast<unsigned>(v);
  }

  int parse_node() {
    if (++depth_ > 10'000) fail("nesting too deep");
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_++];
    if (c == 'C') {
      nodes_[id].kind = NodeKind::Complete;
      expect('(');
      const int a = parse_node();
      nodes_[id].child[0] = a;
      expect(',');
      const int b = parse_node();
      nodes_[id].child[1] = b;
      expect(')');
    } else if (c == 'S') {
      const unsigned which = number();
      if (which > 1) fail("slave node must be S0 or S1");
      nodes_[id].kind = which == 0 ? NodeKind::Slave0 : NodeKind::Slave1;
      expect('(');
      const int a = parse_node();
      nodes_[id].child[which] = a;
      expect(')');
    } else if (c == 'M') {
      nodes_[id].kind = NodeKind::Master;
      nodes_[id].degree = number();
      if (eat('#')) nodes_[id].symbol = static_cast<int>(number());
      if (eat('(')) {
        const int a = parse_node();
        nodes_[id].child[0] = a;
        expect(')');
      }
    } else {
      --pos_;
      fail(std::string("unknown node kind '") + c + "'");
    }
    --depth_;
    return id;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::vector<Node> nodes_;
};

}  // namespace

SourceSpec SourceSpec::make(std::vector<Rational> probabilities,
                            std::vector<std::string> names) {
  if (probabilities.empty())
    throw ValidationError("source must have at least one symbol");
  SourceSpec src;
  Rational total = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const Rational& p = probabilities[i];
    if (p.sign() <= 0)
      throw ValidationError("p[" + std::to_string(i) + "] = " + p.str() +
                            " is not positive");
    const mpz_class& d = p.den();
    if (mpz_popcount(d.get_mpz_t()) != 1)
      throw ValidationError("p[" + std::to_string(i) + "] = " + p.str() +
                            " is not dyadic");
    src.b = std::max(src.b, static_cast<unsigned>(
                                mpz_sizeinbase(d.get_mpz_t(), 2) - 1));
    total += p;
  }
  if (total != 1)
    throw ValidationError("probabilities sum to " + total.str() +
                          ", expected 1");
  if (!names.empty() && names.size() != probabilities.size())
    throw ValidationError("expected " + std::to_string(probabilities.size()) +
                          " symbol names, got " +
                          std::to_string(names.size()));
  const std::size_t n = probabilities.size();
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back(default_name(i, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names[i] == names[j])
        throw ValidationError("duplicate symbol name '" + names[i] + "'");
  src.probabilities = std::move(probabilities);
  src.names = std::move(names);
  return src;
}

double SourceSpec::entropy() const {
  double h = 0.0;
  for (const auto& p : probabilities) {
    const double v = p.to_double();
    h -= v * std::log2(v);
  }
  return h;
}

std::size_t SourceSpec::symbol(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
}

CodeTree::CodeTree(std::size_t type, std::vector<Node> nodes)
    : type_(type), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("tree has no nodes");
  std::vector<int> parents(nodes_.size(), 0);
  for (const auto& nd : nodes_)
    for (int c : nd.child) {
      if (c < 0) continue;
      if (c == 0 || c >= static_cast<int>(nodes_.size()))
        throw ValidationError("tree has a dangling child index");
      if (++parents[static_cast<std::size_t>(c)] > 1)
        throw ValidationError("tree node has two parents");
    }
  std::size_t reached = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    ++reached;
    for (int c : nodes_[static_cast<std::size_t>(id)].child)
      if (c >= 0) stack.push_back(c);
  }
  if (reached != nodes_.size())
    throw ValidationError("tree has unreachable nodes");
}

CodeTree CodeTree::parse(std::string_view text, std::size_t type) {
  return CodeTree(type, TreeParser(text).run());
}

std::string CodeTree::serialize() const {
  std::string out;
  std::function<void(int)> rec = [&](int id) {
    const Node& nd = nodes_[static_cast<std::size_t>(id)];
    switch (nd.kind) {
      case NodeKind::Complete:
        out += "C(";
        if (nd.child[0] >= 0) rec(nd.child[0]);
        out += ',';
        if (nd.child[1] >= 0) rec(nd.child[1]);
        out += ')';
        break;
      case NodeKind::Slave0:
      case NodeKind::Slave1: {
        const int which = nd.kind == NodeKind::Slave0 ? 0 : 1;
        out += which == 0 ? "S0(" : "S1(";
        if (nd.child[which] >= 0) rec(nd.child[which]);
        out += ')';
        break;
      }
      case NodeKind::Master:
        out += 'M';
        out += std::to_string(nd.degree);
        if (nd.symbol >= 0) {
          out += '#';
          out += std::to_string(nd.symbol);
        }
        if (nd.child[0] >= 0) {
          out += '(';
          rec(nd.child[0]);
          out += ')';
        }
        break;
    }
  };
  rec(0);
  return out;
}

int CodeTree::find(std::string_view path) const {
  int id = 0;
  for (char c : path) {
    if (c != '0' && c != '1') return -1;
    id = nodes_[static_cast<std::size_t>(id)].child[c - '0'];
    if (id < 0) return -1;
  }
  return id;
}

std::size_t CodeTree::height() const {
  std::size_t best = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (int c : nodes_[static_cast<std::size_t>(id)].child)
      if (c >= 0) stack.emplace_back(c, d + 1);
  }
  return best;
}

std::size_t CodeTree::master_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(),
                    [](const Node& nd) { return nd.kind == NodeKind::Master; }));
}

bool CodeTree::labeled() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& nd) {
    return nd.kind != NodeKind::Master || nd.symbol >= 0;
  });
}

TreeStats tree_stats(const CodeTree& t, const SourceSpec& src, std::size_t m) {
  const std::size_t n = src.n();
  TreeStats st;
  st.lengths.assign(n, 0);
  st.degrees.assign(n, 0);
  st.q.assign(m, Rational(0));
  std::vector<bool> seen(n, false);
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    const Node& nd = t.node(id);
    if (nd.kind == NodeKind::Master) {
      if (nd.symbol < 0 || static_cast<std::size_t>(nd.symbol) >= n ||
          seen[static_cast<std::size_t>(nd.symbol)])
        throw ValidationError("tree " + t.serialize() +
                              " does not label each symbol exactly once");
      if (nd.degree >= m)
        throw ValidationError("master degree " + std::to_string(nd.degree) +
                              " out of range");
      const auto s = static_cast<std::size_t>(nd.symbol);
      seen[s] = true;
      st.lengths[s] = d;
      st.degrees[s] = nd.degree;
    }
    for (int c : nd.child)
      if (c >= 0) stack.emplace_back(c, d + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i])
      throw ValidationError("symbol " + src.names[i] + " has no master node");
    st.average_length += src.probabilities[i] * Rational(static_cast<long>(st.lengths[i]));
    st.q[st.degrees[i]] += src.probabilities[i];
  }
  return st;
}

State to_state(const CodeTree& t, const SourceSpec& src, std::size_t m) {
  TreeStats st = tree_stats(t, src, m);
  return State{st.average_length, std::move(st.q),
               "T" + std::to_string(t.type()) + ":" + t.serialize()};
}

CodeTree tree_from_label(const std::string& label) {
  const auto colon = label.find(':');
  if (label.size() < 3 || label[0] != 'T' || colon == std::string::npos)
    throw ParseError("state label '" + label + "' does not name a tree");
  std::size_t type = 0;
  for (std::size_t i = 1; i < colon; ++i) {
    if (label[i] < '0' || label[i] > '9')
      throw ParseError("state label '" + label + "' does not name a tree");
    type = type * 10 + static_cast<std::size_t>(label[i] - '0');
  }
  return CodeTree::parse(std::string_view(label).substr(colon + 1), type);
}

}  // namespace mcpoly::aifv
