#include <algorithm>

#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly {

std::string to_string(Method m) {
  switch (m) {
    case Method::BruteForce: return "brute";
    case Method::Iterate: return "iterate";
    case Method::Ellipsoid: return "ellipsoid";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "brute" || name == "brute_force" || name == "bruteforce")
    return Method::BruteForce;
  if (name == "iterate") return Method::Iterate;
  if (name == "ellipsoid") return Method::Ellipsoid;
  throw ParseError("unknown method '" + name +
                   "' (expected brute, iterate or ellipsoid)");
}

Box auto_box(const StateFamilies& fams) {
  Rational q0 = 1;
  for (const auto& fam : fams.families())
    for (const auto& s : fam) q0 = std::min(q0, s.transitions[0]);
  Rational bound = (fams.max_cost() - fams.min_cost()) / q0;
  if (bound < 1) bound = 1;
  return Box::cube(fams.m(), -bound, bound);
}

Rational cost_shift_for(const StateFamilies& fams) {
  const Rational lo = fams.min_cost();
  return lo < 1 ? Rational(1) - lo : Rational(0);
}

SolveReport solve(const StateFamilies& fams, Method method,
                  const SolveOptions& opts) {
  const PointX x0 = opts.x0 ? *opts.x0 : PointX(fams.m() - 1, Rational(0));
  switch (method) {
    case Method::BruteForce:
      return brute_force(fams, opts.brute);
    case Method::Iterate:
      return iterate(fams, x0, opts.iterate);
    case Method::Ellipsoid:
      break;
  }

  const Rational shift = cost_shift_for(fams);
  const StateFamilies shifted = shift.is_zero() ? fams : fams.shifted(shift);
  const Box box = opts.box ? *opts.box : auto_box(fams);

  EllipsoidOptions eo;
  eo.eps = opts.eps;
  eo.budget = opts.budget;
  eo.record_trace = opts.record_ellipsoid_trace;
  EllipsoidResult er = ellipsoid_max_y(shifted, box, eo);
  er.y -= shift.to_double();

  PointX seed;
  for (double v : er.x) seed.push_back(Rational::from_double(v));
  SolveReport report = iterate(fams, seed, opts.iterate);
  const PointX& x_star = *report.x_final;
  const Rational y_star = envelope(fams, x_star).h;
  PruneResult pr = prune(fams, x_star, y_star, Rational(0));

  report.solver = "ellipsoid";
  report.chain = pr.chain;
  report.cost = pr.cost;
  report.cost_shift = shift;
  report.box = box;
  report.phi = phi_bound(shifted);
  report.ellipsoid = std::move(er);
  report.prune = std::move(pr);
  return report;
}

}  // namespace mcpoly
