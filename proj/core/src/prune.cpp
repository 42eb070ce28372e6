#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly {

namespace {

Restriction attaining(const StateFamilies& fams, const PointX& x_hat,
                      const Rational& y_hat, const Rational& eq_tol,
                      const Restriction& r) {
  std::vector<std::size_t> keep;
  for (auto k : r.members()) {
    const auto g = type_envelope(fams, k, x_hat, r);
    if (g && abs(g->value - y_hat) <= eq_tol) keep.push_back(k);
  }
  for (auto k : keep)
    if (k == 0) return Restriction(fams.m(), keep);
  throw PruneDiverged("prune: type 0 left the attaining set; (x_hat, y_hat) "
                      "is not a highest point or the tolerance is too small");
}

}  // namespace

PruneResult prune(const StateFamilies& fams, const PointX& x_hat,
                  const Rational& y_hat, const Rational& eq_tol) {
  if (x_hat.size() + 1 != fams.m())
    throw ValidationError("prune: point has wrong dimension");
  Restriction r = Restriction::full(fams.m());
  Restriction next = attaining(fams, x_hat, y_hat, eq_tol, r);
  std::size_t steps = 0;
  while (!(next == r)) {
    r = next;
    ++steps;
    if (steps >= fams.m())
      throw PruneDiverged("prune: more than m - 1 shrink steps");
    next = attaining(fams, x_hat, y_hat, eq_tol, r);
  }

  PruneResult out{r, {}, {}, steps, {}};
  std::vector<std::size_t> idx(fams.m());
  for (std::size_t k = 0; k < fams.m(); ++k) {
    auto t = type_envelope(fams, k, x_hat, r);
    if (!t) {
      // Only possible for k outside R: such a state is never reached from
      // the recurrent class, so any member will do.
      out.fallback_types.push_back(k);
      t = type_envelope(fams, k, x_hat, Restriction::full(fams.m()));
    }
    idx[k] = t->state;
  }
  out.chain = make_chain(fams, idx);
  out.cost = cost(out.chain);
  if (eq_tol.is_zero() && out.cost != y_hat)
    throw PruneDiverged("prune: restricted chain costs " + out.cost.str() +
                        " but y_hat = " + y_hat.str());
  return out;
}

}  // namespace mcpoly
