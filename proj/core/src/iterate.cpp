#include <sstream>

#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly {

namespace {

bool in_unit_box(const PointX& x) {
  for (const auto& v : x)
    if (v.sign() < 0 || v > 1) return false;
  return true;
}

std::string point_str(const PointX& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

PointX step_F(const StateFamilies& fams, const PointX& z) {
  const EnvelopeResult env = envelope(fams, z);
  return intersection_point(env.chain(fams)).x;
}

SolveReport iterate(const StateFamilies& fams, const PointX& x0,
                    const IterateOptions& opts) {
  if (x0.size() + 1 != fams.m())
    throw ValidationError("iterate: start point has wrong dimension");
  SolveReport r;
  r.solver = "iterate";
  PointX x = x0;
  for (std::size_t i = 0; i < opts.max_iterations; ++i) {
    EnvelopeResult env = envelope(fams, x);
    TraceEntry t;
    t.iteration = i;
    t.x = x;
    for (const auto& pt : env.per_type) t.g.push_back(pt.value);
    t.h = env.h;
    t.in_unit_box = in_unit_box(x);
    r.trace.push_back(std::move(t));

    Chain chain = env.chain(fams);
    IntersectionPoint next = intersection_point(chain);
    r.iterations = i + 1;
    if (next.x == x) {
      r.cost = cost(chain);
      r.chain = std::move(chain);
      r.x_final = std::move(x);
      return r;
    }
    x = std::move(next.x);
  }
  std::ostringstream msg;
  msg << "iterate: no fixed point after " << opts.max_iterations
      << " steps; last points:";
  const std::size_t tail = std::min<std::size_t>(r.trace.size(), 4);
  for (std::size_t i = r.trace.size() - tail; i < r.trace.size(); ++i)
    msg << ' ' << point_str(r.trace[i].x);
  throw IterationCapExceeded(msg.str());
}

}  // namespace mcpoly
