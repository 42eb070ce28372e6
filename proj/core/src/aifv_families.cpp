#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "mcpoly/aifv.hpp"
#include "mcpoly/errors.hpp"

namespace mcpoly::aifv {

namespace {

std::string state_key(const Rational& cost, const Vector& q) {
  std::string key = cost.str();
  for (const auto& v : q) {
    key += ';';
    key += v.str();
  }
  return key;
}

// Master nodes of a shape grouped by degree, each group in order of depth.
std::vector<std::vector<int>> slots_by_degree(const CodeTree& t, std::size_t m) {
  std::vector<std::vector<std::pair<std::size_t, int>>> groups(m);
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    const Node& nd = t.node(id);
    if (nd.kind == NodeKind::Master) groups.at(nd.degree).emplace_back(d, id);
    for (int e = 1; e >= 0; --e)
      if (nd.child[e] >= 0) stack.emplace_back(nd.child[e], d + 1);
  }
  std::vector<std::vector<int>> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::stable_sort(groups[j].begin(), groups[j].end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [d, id] : groups[j]) out[j].push_back(id);
  }
  return out;
}

}  // namespace

std::vector<State> family_states(std::size_t k, std::size_t m,
                                 const SourceSpec& src,
                                 const EnumerationOptions& opts) {
  const std::size_t n = src.n();
  const auto classes = shape_classes(k, m, n, opts);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return src.probabilities[a] > src.probabilities[b];
  });

  std::vector<State> out;
  std::unordered_set<std::string> seen;
  for (const auto& cls : classes) {
    std::vector<std::vector<std::size_t>> depths(m);
    std::vector<std::size_t> degrees;
    for (const auto& [d, deg] : cls.slots) {
      depths[deg].push_back(d);
      degrees.push_back(deg);
    }
    std::sort(degrees.begin(), degrees.end());
    std::optional<std::vector<std::vector<int>>> nodes;
    std::optional<CodeTree> shape;
    do {
      Rational cost = 0;
      Vector q(m, Rational(0));
      std::vector<std::size_t> used(m, 0);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t deg = degrees[j];
        const Rational& p = src.probabilities[order[j]];
        cost += p * Rational(static_cast<long>(depths[deg][used[deg]++]));
        q[deg] += p;
      }
      if (!seen.insert(state_key(cost, q)).second) continue;
      if (!shape) {
        shape = CodeTree::parse(cls.representative, k);
        nodes = slots_by_degree(*shape, m);
      }
      CodeTree tree = *shape;
      std::fill(used.begin(), used.end(), 0);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t deg = degrees[j];
        tree.mutable_nodes()[static_cast<std::size_t>((*nodes)[deg][used[deg]++])]
            .symbol = static_cast<int>(order[j]);
      }
      out.push_back(to_state(tree, src, m));
    } while (std::next_permutation(degrees.begin(), degrees.end()));
  }
  return out;
}

StateFamilies families_from_source(const SourceSpec& src, std::size_t m,
                                   const EnumerationOptions& opts) {
  std::vector<std::vector<State>> fams;
  for (std::size_t k = 0; k < m; ++k)
    fams.push_back(family_states(k, m, src, opts));
  return StateFamilies(m, std::move(fams));
}

PointoolReport check_pointool(const StateFamilies& fams, std::size_t n,
                              std::size_t samples, std::uint64_t seed) {
  const std::size_t m = fams.m();
  PointoolReport rep;
  rep.applicable = m < 64 && n + 1 >= (std::size_t{1} << m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(0, 64);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t facet = s % (2 * (m - 1));
    const std::size_t k = facet / 2 + 1;
    const long v = static_cast<long>(facet % 2);
    PointX x(m - 1);
    for (auto& c : x) c = Rational(coord(rng), 64);
    x[k - 1] = Rational(v);
    const auto env = envelope(fams, x);
    const Rational& g0 = env.per_type[0].value;
    const Rational& gk = env.per_type[k].value;
    ++rep.checks;
    const bool ok = v == 0 ? g0 <= gk : gk <= g0;
    if (!ok) {
      std::string at;
      for (const auto& c : x) at += (at.empty() ? "" : ",") + c.str();
      rep.violations.push_back("x = (" + at + "): g_0 = " + g0.str() +
                               ", g_" + std::to_string(k) + " = " + gk.str());
    }
  }
  return rep;
}

}  // namespace mcpoly::aifv
