#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly {

namespace {

using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Largest depth accepted for a deep cut; alpha close to 1 means the cut
// nearly misses the ellipsoid, which in floating point is noise.
constexpr Real kMaxDepth = 0.99L;

}  // namespace

std::size_t default_ellipsoid_budget(const StateFamilies& fams) {
  const std::size_t m = fams.m();
  return 10 * m * m * (phi_bound(fams) + 64);
}

EllipsoidResult ellipsoid_max_y(const StateFamilies& fams, const Box& box,
                                const EllipsoidOptions& opts) {
  const std::size_t n = fams.m();
  if (box.dim() + 1 != n) throw ValidationError("ellipsoid: box dimension");
  if (!(opts.eps > 0)) throw ValidationError("ellipsoid: eps must be positive");
  const std::size_t budget =
      opts.budget ? opts.budget : default_ellipsoid_budget(fams);

  const FloatFamilies ff(fams);
  std::vector<std::pair<double, double>> fbox;
  for (const auto& [lo, hi] : box.bounds)
    fbox.emplace_back(lo.to_double(), hi.to_double());

  // Initial ball around box x [y_floor, U]; every chain cost is at most the
  // largest state cost, and so is the top of the polytope.
  const double top = std::max(fams.max_cost().to_double(), opts.y_floor + 1.0);
  Vec c(n);
  Real r2 = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    c(i) = (static_cast<Real>(fbox[i].first) + fbox[i].second) / 2;
    const Real half = (static_cast<Real>(fbox[i].second) - fbox[i].first) / 2;
    r2 += half * half;
  }
  c(n - 1) = (static_cast<Real>(opts.y_floor) + top) / 2;
  const Real yhalf = (static_cast<Real>(top) - opts.y_floor) / 2;
  r2 += yhalf * yhalf;
  Mat p = Mat::Identity(n, n) * (r2 * 1.01L + 1e-12L);

  const Real dn = static_cast<Real>(n);
  const Real scale = dn * dn / (dn * dn - 1);
  EllipsoidResult res;
  Real best_y = -std::numeric_limits<Real>::infinity();
  std::vector<double> cx(n - 1);

  for (std::size_t it = 0; it < budget; ++it) {
    for (std::size_t i = 0; i + 1 < n; ++i) cx[i] = static_cast<double>(c(i));
    const double cy = static_cast<double>(c(n - 1));
    const FloatSeparation sep = separate_float(ff, cx, cy, fbox, opts.y_floor);
    ++res.oracle_calls;

    Vec g = Vec::Zero(n);
    Real offset = 0;
    int cut = sep.step;
    if (sep.verdict == Verdict::Inside) {
      if (cy > best_y) {
        best_y = cy;
        res.x = cx;
        res.y = cy;
        res.feasible = true;
      }
      g(n - 1) = -1;  // keep y >= best_y
      offset = -best_y;
      cut = 3;
    } else {
      for (std::size_t i = 0; i < n; ++i) g(i) = sep.normal[i];
      offset = sep.offset;
    }

    const Vec pg = p * g;
    const Real gpg = g.dot(pg);
    const Real upper = c(n - 1) + std::sqrt(std::max<Real>(p(n - 1, n - 1), 0));
    if (opts.record_trace) {
      std::vector<double> center(n);
      for (std::size_t i = 0; i < n; ++i) center[i] = static_cast<double>(c(i));
      res.trace.push_back({it, std::move(center),
                           sep.verdict == Verdict::Inside, cut,
                           static_cast<double>(upper)});
    }
    if (res.feasible && upper - best_y <= static_cast<Real>(opts.eps) / 2) {
      res.converged = true;
      res.gap = static_cast<double>(upper - best_y);
      return res;
    }
    if (!(gpg > 0)) break;  // ellipsoid has collapsed numerically

    const Real norm = std::sqrt(gpg);
    const Real depth =
        std::clamp((g.dot(c) - offset) / norm, Real(0), kMaxDepth);
    const Vec b = pg / norm;
    c -= ((1 + dn * depth) / (dn + 1)) * b;
    p = scale * (1 - depth * depth) *
        (p - (2 * (1 + dn * depth) / ((dn + 1) * (1 + depth))) * (b * b.transpose()));
    p = (p + p.transpose()) / 2;
    if (it % 64 == 0 && Eigen::LLT<Mat>(p).info() != Eigen::Success) break;
  }

  if (!res.feasible)
    throw BudgetExceeded("ellipsoid: no feasible center found within " +
                         std::to_string(res.oracle_calls) + " oracle calls");
  const Real upper = c(n - 1) + std::sqrt(std::max<Real>(p(n - 1, n - 1), 0));
  res.gap = static_cast<double>(std::max<Real>(upper - best_y, 0));
  return res;
}

}  // namespace mcpoly
