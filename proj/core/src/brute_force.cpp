#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly {

namespace {

std::vector<std::size_t> decode_index(std::size_t linear,
                                      const StateFamilies& fams) {
  // Type 0 is the most significant digit, so linear order is lexicographic.
  std::vector<std::size_t> idx(fams.m());
  for (std::size_t k = fams.m(); k-- > 0;) {
    const std::size_t size = fams.family(k).size();
    idx[k] = linear % size;
    linear /= size;
  }
  return idx;
}

struct Best {
  std::optional<Rational> cost;
  std::size_t linear = 0;
};

}  // namespace

std::size_t default_threads() {
  if (const char* env = std::getenv("MCPOLY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

SolveReport brute_force(const StateFamilies& fams,
                        const BruteForceOptions& opts) {
  const std::size_t total = fams.chain_count();
  if (total > opts.budget)
    throw BudgetExceeded("brute force: " +
                         (total == std::numeric_limits<std::size_t>::max()
                              ? std::string("too many")
                              : std::to_string(total)) +
                         " chains exceed the budget of " +
                         std::to_string(opts.budget));

  std::size_t workers = opts.threads ? opts.threads : default_threads();
  workers = std::max<std::size_t>(1, std::min(workers, total));

  std::vector<Best> partial(workers);
  auto run = [&](std::size_t w) {
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    Best& best = partial[w];
    for (std::size_t lin = begin; lin < end; ++lin) {
      Rational c = cost(make_chain(fams, decode_index(lin, fams)));
      if (!best.cost || c < *best.cost) {
        best.cost = std::move(c);
        best.linear = lin;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  // Partitions are ordered, so the first strict minimum is lexicographic.
  Best best;
  for (auto& b : partial) {
    if (b.cost && (!best.cost || *b.cost < *best.cost)) best = b;
  }

  SolveReport r;
  r.solver = "brute";
  r.chain = make_chain(fams, decode_index(best.linear, fams));
  r.cost = *best.cost;
  r.iterations = total;
  return r;
}

}  // namespace mcpoly
