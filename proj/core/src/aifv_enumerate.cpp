#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "mcpoly/aifv.hpp"
#include "mcpoly/errors.hpp"

namespace mcpoly::aifv {

namespace {

struct Item {
  std::string text;
  Signature sig;
};

Signature shifted(const Signature& s, std::size_t by) {
  Signature out = s;
  for (auto& slot : out) slot.first = static_cast<std::uint16_t>(slot.first + by);
  return out;
}

Signature merged(const Signature& a, const Signature& b) {
  Signature out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Normalized trees are generated top-down; the normalization conditions
// hold by construction. Free(b, h) is a subtree with b masters, no slave-1
// node and no slave-0 outside master chains. Spine(t, b, h) sits at node
// 0^t of a type-k tree, t < k, and must lead to the slave-1 node 0^k.
class Grammar {
 public:
  Grammar(std::size_t k, std::size_t m, bool by_signature, std::size_t budget)
      : k_(k), m_(m), by_signature_(by_signature), budget_(budget) {}

  const std::vector<Item>& root(std::size_t n, std::size_t cap) {
    const long h = static_cast<long>(cap);
    return k_ == 0 ? free(n, h) : spine(0, n, h, true);
  }

 private:
  using Key = std::tuple<int, std::size_t, std::size_t, long, bool>;

  void add(std::vector<Item>& out, std::set<Signature>& seen, Item item) {
    if (by_signature_ && !seen.insert(item.sig).second) return;
    if (++made_ > budget_)
      throw BudgetExceeded("tree enumeration exceeded budget of " +
                           std::to_string(budget_) + " subtrees");
    out.push_back(std::move(item));
  }

  static Item master(unsigned d, const Item& child) {
    std::string text = "M" + std::to_string(d) + "(";
    for (unsigned i = 0; i < d; ++i) text += "S0(";
    text += child.text;
    text.append(d + 1, ')');
    Signature sig = shifted(child.sig, d + 1);
    sig.insert(std::upper_bound(sig.begin(), sig.end(),
                                std::pair<std::uint16_t, std::uint16_t>(
                                    0, static_cast<std::uint16_t>(d))),
               {0, static_cast<std::uint16_t>(d)});
    return {std::move(text), std::move(sig)};
  }

  static Item complete(const Item& a, const Item& b) {
    return {"C(" + a.text + "," + b.text + ")",
            merged(shifted(a.sig, 1), shifted(b.sig, 1))};
  }

  static Item slave(int which, const Item& a) {
    return {(which == 0 ? "S0(" : "S1(") + a.text + ")", shifted(a.sig, 1)};
  }

  const std::vector<Item>& free(std::size_t b, long h) {
    const Key key{0, 0, b, h, false};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Item> out;
    std::set<Signature> seen;
    if (h >= 0 && b == 1) add(out, seen, Item{"M0", {{0, 0}}});
    if (h >= 0 && b >= 2) {
      for (unsigned d = 1; d < m_; ++d) {
        if (h < static_cast<long>(d) + 1) break;
        for (const Item& c : free(b - 1, h - d - 1)) add(out, seen, master(d, c));
      }
      if (h >= 1)
        for (std::size_t b0 = 1; b0 < b; ++b0) {
          const auto& left = free(b0, h - 1);
          const auto& right = free(b - b0, h - 1);
          for (const Item& a : left)
            for (const Item& c : right) add(out, seen, complete(a, c));
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const std::vector<Item>& slave1_node(std::size_t b, long h) {
    const Key key{1, 0, b, h, false};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Item> out;
    std::set<Signature> seen;
    if (h >= 1)
      for (const Item& a : free(b, h - 1)) add(out, seen, slave(1, a));
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const std::vector<Item>& spine(std::size_t t, std::size_t b, long h,
                                 bool allow_slave0) {
    if (t == k_) return slave1_node(b, h);
    const Key key{2, t, b, h, allow_slave0};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Item> out;
    std::set<Signature> seen;
    if (h >= static_cast<long>(k_ - t) + 1) {
      if (allow_slave0)
        for (const Item& a : spine(t + 1, b, h - 1, true))
          add(out, seen, slave(0, a));
      for (std::size_t b0 = 1; b0 < b; ++b0) {
        const auto& left = spine(t + 1, b0, h - 1, false);
        const auto& right = free(b - b0, h - 1);
        for (const Item& a : left)
          for (const Item& c : right) add(out, seen, complete(a, c));
      }
      if (b >= 2)
        for (unsigned d = 1; d < m_ && t + d + 1 <= k_; ++d) {
          if (h < static_cast<long>(d) + 1) break;
          for (const Item& c : spine(t + d + 1, b - 1, h - d - 1, false))
            add(out, seen, master(d, c));
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  std::size_t k_;
  std::size_t m_;
  bool by_signature_;
  std::size_t budget_;
  std::size_t made_ = 0;
  std::map<Key, std::vector<Item>> memo_;
};

void check_args(std::size_t k, std::size_t m, std::size_t n) {
  if (m < 2) throw ValidationError("m must be at least 2");
  if (k >= m) throw ValidationError("tree type must be below m");
  if (n < 1) throw ValidationError("source must have at least one symbol");
}

std::size_t resolve_cap(const EnumerationOptions& opts, std::size_t n,
                        std::size_t m) {
  return opts.height_cap == 0 ? default_height_cap(n, m) : opts.height_cap;
}

struct MasterSlot {
  int node;
  std::size_t depth;
  unsigned degree;
};

std::vector<MasterSlot> master_slots(const CodeTree& t) {
  std::vector<MasterSlot> out;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    const Node& nd = t.node(id);
    if (nd.kind == NodeKind::Master) out.push_back({id, d, nd.degree});
    for (int e = 1; e >= 0; --e)
      if (nd.child[e] >= 0) stack.emplace_back(nd.child[e], d + 1);
  }
  return out;
}

// Symbol indices ordered by decreasing probability, ties by index.
std::vector<std::size_t> by_probability(const SourceSpec& src) {
  std::vector<std::size_t> order(src.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return src.probabilities[a] > src.probabilities[b];
  });
  return order;
}

Rational slot_key(std::size_t depth, unsigned degree, const PointX& x) {
  Rational key(static_cast<long>(depth));
  if (degree > 0) key += x.at(degree - 1);
  return key;
}

}  // namespace

void enumerate_shapes(std::size_t k, std::size_t m, std::size_t n,
                      const EnumerationOptions& opts,
                      const std::function<void(const CodeTree&)>& visit) {
  check_args(k, m, n);
  Grammar g(k, m, false, opts.budget);
  for (const Item& it : g.root(n, resolve_cap(opts, n, m)))
    visit(CodeTree::parse(it.text, k));
}

std::vector<ShapeClass> shape_classes(std::size_t k, std::size_t m,
                                      std::size_t n,
                                      const EnumerationOptions& opts) {
  check_args(k, m, n);
  const std::size_t cap = resolve_cap(opts, n, m);
  using CacheKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  static std::mutex mu;
  static std::map<CacheKey, std::vector<ShapeClass>> cache;
  const CacheKey key{k, m, n, cap};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Grammar g(k, m, true, opts.budget);
  std::vector<ShapeClass> out;
  for (const Item& it : g.root(n, cap)) out.push_back({it.sig, it.text});
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(out)).first->second;
}

CodeTree assign_symbols(const CodeTree& shape, const SourceSpec& src,
                        const PointX& x) {
  auto slots = master_slots(shape);
  if (slots.size() != src.n())
    throw ValidationError("shape has " + std::to_string(slots.size()) +
                          " master nodes for " + std::to_string(src.n()) +
                          " symbols");
  std::vector<Rational> keys;
  for (const auto& s : slots) keys.push_back(slot_key(s.depth, s.degree, x));
  std::vector<std::size_t> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  const auto symbols = by_probability(src);
  CodeTree out = shape;
  for (std::size_t j = 0; j < order.size(); ++j)
    out.mutable_nodes()[static_cast<std::size_t>(slots[order[j]].node)].symbol =
        static_cast<int>(symbols[j]);
  return out;
}

std::vector<CodeTree> enumerate_trees(std::size_t k, std::size_t m,
                                      const SourceSpec& src,
                                      const EnumerationOptions& opts) {
  const PointX zero(m - 1, Rational(0));
  std::vector<CodeTree> out;
  enumerate_shapes(k, m, src.n(), opts, [&](const CodeTree& t) {
    out.push_back(assign_symbols(t, src, zero));
  });
  return out;
}

BestTree best_tree(std::size_t k, std::size_t m, const SourceSpec& src,
                   const PointX& x, const Restriction& p,
                   const EnumerationOptions& opts) {
  if (x.size() + 1 != m)
    throw ValidationError("point has dimension " + std::to_string(x.size()) +
                          ", expected " + std::to_string(m - 1));
  const auto classes = shape_classes(k, m, src.n(), opts);
  std::vector<Rational> probs = src.probabilities;
  std::sort(probs.begin(), probs.end(), std::greater<>());
  const Rational offset = k > 0 ? x[k - 1] : Rational(0);

  const ShapeClass* best = nullptr;
  Rational best_value;
  std::vector<Rational> keys;
  for (const auto& cls : classes) {
    bool ok = true;
    for (const auto& slot : cls.slots)
      if (!p.contains(slot.second)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    keys.clear();
    for (const auto& slot : cls.slots)
      keys.push_back(slot_key(slot.first, slot.second, x));
    std::sort(keys.begin(), keys.end());
    Rational value = -offset;
    for (std::size_t j = 0; j < keys.size(); ++j) value += probs[j] * keys[j];
    if (!best || value < best_value) {
      best = &cls;
      best_value = value;
    }
  }
  if (!best)
    throw EmptyRestrictedFamily(k, "no type-" + std::to_string(k) +
                                       " tree uses only degrees in " + p.str());
  return {assign_symbols(CodeTree::parse(best->representative, k), src, x),
          best_value};
}

}  // namespace mcpoly::aifv
