#include "mcpoly/generate.hpp"

#include <algorithm>
#include <set>

#include "mcpoly/errors.hpp"

namespace mcpoly::gen {

State random_state(Rng& rng, std::size_t m, const StateOptions& opts) {
  std::uniform_int_distribution<long> den(1, opts.max_cost_den);
  std::uniform_int_distribution<long> weight(1, opts.max_weight);
  std::bernoulli_distribution zero(opts.zero_prob);

  State s;
  const long d = den(rng);
  std::uniform_int_distribution<long> num(opts.cost_min * d, opts.cost_max * d);
  s.cost = Rational(num(rng), d);
  std::vector<long> w(m);
  long total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    w[j] = (j > 0 && zero(rng)) ? 0 : weight(rng);
    total += w[j];
  }
  for (std::size_t j = 0; j < m; ++j) s.transitions.emplace_back(w[j], total);
  return s;
}

StateFamilies random_families(Rng& rng, std::size_t m, std::size_t max_states,
                              const StateOptions& opts) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_states));
  std::vector<std::vector<State>> fams(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = count(rng);
    for (std::size_t i = 0; i < c; ++i) {
      State s = random_state(rng, m, opts);
      s.label = "s" + std::to_string(k) + "_" + std::to_string(i);
      fams[k].push_back(std::move(s));
    }
  }
  return StateFamilies(m, std::move(fams));
}

aifv::SourceSpec random_dyadic_source(Rng& rng, std::size_t n, unsigned b) {
  if (b >= 62 || (1L << b) < static_cast<long>(n))
    throw ValidationError("need 2^b >= n for a dyadic source");
  const long total = 1L << b;
  std::uniform_int_distribution<long> cut(1, total - 1);
  std::set<long> cuts;
  while (cuts.size() + 1 < n) cuts.insert(cut(rng));
  std::vector<Rational> p;
  long prev = 0;
  for (long c : cuts) {
    p.emplace_back(c - prev, total);
    prev = c;
  }
  p.emplace_back(total - prev, total);
  return aifv::SourceSpec::make(std::move(p));
}

}  // namespace mcpoly::gen
