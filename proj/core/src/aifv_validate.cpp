#include <algorithm>
#include <string>

#include "mcpoly/aifv.hpp"

namespace mcpoly::aifv {

namespace {

struct Walk {
  int id;
  int parent;
  std::string path;
};

std::string where(const std::string& path) {
  return path.empty() ? std::string("root") : "node " + path;
}

}  // namespace

std::size_t default_height_cap(std::size_t n, std::size_t m) { return n + m; }

std::size_t height_bound(std::size_t n, std::size_t m) {
  return (n - 1) * (m + 1) + 1;
}

bool has_errors(const std::vector<Violation>& v) {
  for (const auto& x : v)
    if (x.severity == Severity::Error) return true;
  return false;
}

std::vector<Violation> validate(const CodeTree& t, std::size_t m,
                                std::size_t n, const ValidateOptions& opts) {
  std::vector<Violation> out;
  const Severity soft = opts.strict ? Severity::Error : Severity::Warning;
  auto report = [&](Severity s, const char* rule, std::string msg) {
    out.push_back(Violation{s, rule, std::move(msg)});
  };
  const std::size_t k = t.type();
  if (k >= m)
    report(Severity::Error, "type-spine",
           "tree type " + std::to_string(k) + " is not below m = " +
               std::to_string(m));

  std::vector<int> symbol_count(n, 0);
  std::size_t masters = 0;
  std::vector<Walk> stack{{0, -1, ""}};
  while (!stack.empty()) {
    Walk w = std::move(stack.back());
    stack.pop_back();
    const Node& nd = t.node(w.id);
    const bool has0 = nd.child[0] >= 0;
    const bool has1 = nd.child[1] >= 0;
    const std::string at = where(w.path);
    const NodeKind parent_kind =
        w.parent >= 0 ? t.node(w.parent).kind : NodeKind::Complete;

    switch (nd.kind) {
      case NodeKind::Complete:
        if (!has0 || !has1)
          report(Severity::Error, "node-arity",
                 at + ": complete node needs both children");
        break;
      case NodeKind::Slave0:
        if (!has0 || has1)
          report(Severity::Error, "node-arity",
                 at + ": slave-0 node needs exactly a 0-child");
        if (w.parent < 0 && k == 0)
          report(soft, "norm-b", "root of T_0 is a slave-0 node");
        if (w.parent >= 0 && parent_kind != NodeKind::Master &&
            parent_kind != NodeKind::Slave0)
          report(soft, "norm-d",
                 at + ": slave-0 node below a node that is neither master "
                      "nor slave-0");
        break;
      case NodeKind::Slave1:
        if (has0 || !has1)
          report(Severity::Error, "node-arity",
                 at + ": slave-1 node needs exactly a 1-child");
        if (w.parent < 0)
          report(soft, "norm-a", "root is a slave-1 node");
        if (w.parent >= 0 && parent_kind == NodeKind::Slave1)
          report(soft, "norm-c", at + ": slave-1 node below a slave-1 node");
        if (k == 0 || w.path != std::string(k, '0'))
          report(soft, "norm-e",
                 at + ": slave-1 node away from 0^" + std::to_string(k));
        break;
      case NodeKind::Master: {
        ++masters;
        if (nd.degree >= m)
          report(Severity::Error, "degree-range",
                 at + ": master degree " + std::to_string(nd.degree) +
                     " is not below m = " + std::to_string(m));
        if (nd.degree == 0) {
          if (has0 || has1)
            report(Severity::Error, "node-arity",
                   at + ": degree-0 master node must be a leaf");
        } else {
          if (!has0 || has1)
            report(Severity::Error, "node-arity",
                   at + ": master node of degree >= 1 needs exactly a 0-child");
          int cur = nd.child[0];
          unsigned chain = 0;
          while (cur >= 0 && t.node(cur).kind == NodeKind::Slave0) {
            ++chain;
            cur = t.node(cur).child[0];
          }
          if (chain != nd.degree)
            report(Severity::Error, "master-chain",
                   at + ": degree-" + std::to_string(nd.degree) +
                       " master node is followed by " + std::to_string(chain) +
                       " slave-0 nodes");
        }
        if (opts.check_symbols) {
          if (nd.symbol < 0 || static_cast<std::size_t>(nd.symbol) >= n)
            report(Severity::Error, "symbols",
                   at + ": master node has no valid symbol");
          else
            ++symbol_count[static_cast<std::size_t>(nd.symbol)];
        }
        break;
      }
    }
    for (int e = 1; e >= 0; --e)
      if (nd.child[e] >= 0)
        stack.push_back(
            Walk{nd.child[e], w.id, w.path + static_cast<char>('0' + e)});
  }

  if (masters != n)
    report(Severity::Error, "symbols",
           "tree has " + std::to_string(masters) + " master nodes, expected " +
               std::to_string(n));
  if (opts.check_symbols)
    for (std::size_t i = 0; i < n; ++i)
      if (symbol_count[i] > 1)
        report(Severity::Error, "symbols",
               "symbol " + std::to_string(i) + " labels " +
                   std::to_string(symbol_count[i]) + " master nodes");

  if (k >= 1) {
    const int v = t.find(std::string(k, '0'));
    if (v < 0 || t.node(v).kind != NodeKind::Slave1)
      report(Severity::Error, "type-spine",
             "node 0^" + std::to_string(k) + " of T_" + std::to_string(k) +
                 " is not a slave-1 node");
  }

  // A single-symbol type-k tree needs the k+1 bits 0^k 1.
  const std::size_t bound = std::max(height_bound(n, m), t.type() + 1);
  if (n >= 1 && t.height() > bound)
    report(soft, "height",
           "height " + std::to_string(t.height()) + " exceeds " + std::to_string(bound));
  return out;
}

std::vector<Violation> validate(const Code& code, const ValidateOptions& opts) {
  std::vector<Violation> out;
  if (code.trees.size() != code.m)
    out.push_back(Violation{Severity::Error, "type-spine",
                            "code has " + std::to_string(code.trees.size()) +
                                " trees, expected " + std::to_string(code.m)});
  for (std::size_t k = 0; k < code.trees.size(); ++k) {
    if (code.trees[k].type() != k)
      out.push_back(Violation{Severity::Error, "type-spine",
                              "tree " + std::to_string(k) + " has type " +
                                  std::to_string(code.trees[k].type())});
    for (auto& v : validate(code.trees[k], code.m, code.source.n(), opts)) {
      v.message = "T_" + std::to_string(k) + ": " + v.message;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace mcpoly::aifv
