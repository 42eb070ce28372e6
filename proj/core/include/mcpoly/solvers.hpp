#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcpoly/chain.hpp"
#include "mcpoly/polytope.hpp"

namespace mcpoly {

enum class Method { BruteForce, Iterate, Ellipsoid };

std::string to_string(Method m);
/// "brute", "iterate" or "ellipsoid". Throws ParseError.
Method parse_method(const std::string& name);

struct TraceEntry {
  std::size_t iteration = 0;
  PointX x;
  std::vector<Rational> g;
  Rational h;
  /// Whether x lies in [0,1]^{m-1}; excursions are recorded, not assumed.
  bool in_unit_box = false;
};

struct EllipsoidStep {
  std::size_t iteration = 0;
  std::vector<double> center;
  bool inside = false;
  /// 0 = floor cut, 1 = box cut, 2 = envelope cut, 3 = objective cut.
  int cut = 0;
  double upper_bound = 0.0;
};

struct EllipsoidResult {
  std::vector<double> x;
  double y = 0.0;
  bool feasible = false;
  bool converged = false;
  double gap = 0.0;
  std::size_t oracle_calls = 0;
  std::vector<EllipsoidStep> trace;
};

struct PruneResult {
  Restriction restriction;
  Chain chain;
  Rational cost;
  std::size_t shrink_steps = 0;
  /// Types k not in R whose restricted family was empty; their unrestricted
  /// argmin was used instead (they are transient either way).
  std::vector<std::size_t> fallback_types;
};

struct SolveReport {
  std::string solver;
  Chain chain;
  Rational cost;
  std::size_t iterations = 0;
  std::vector<TraceEntry> trace;
  /// Added to every cost before the ellipsoid phase, removed afterwards.
  Rational cost_shift;
  std::optional<EllipsoidResult> ellipsoid;
  std::optional<PruneResult> prune;
  std::optional<Box> box;
  std::size_t phi = 0;
  /// Final iterate point (iterate and ellipsoid pipelines).
  std::optional<PointX> x_final;
};

struct BruteForceOptions {
  std::size_t budget = 1'000'000;
  /// 0 = use MCPOLY_THREADS or a single worker.
  std::size_t threads = 0;
};

struct IterateOptions {
  std::size_t max_iterations = 10'000;
};

struct EllipsoidOptions {
  double eps = 1e-9;
  /// 0 = 10 * m^2 * (phi + 64) oracle calls.
  std::size_t budget = 0;
  double y_floor = 0.0;
  bool record_trace = false;
};

struct SolveOptions {
  std::optional<PointX> x0;
  std::optional<Box> box;
  double eps = 1e-9;
  std::size_t budget = 0;
  BruteForceOptions brute;
  IterateOptions iterate;
  bool record_ellipsoid_trace = false;
};

/// Worker count from MCPOLY_THREADS (at least 1).
std::size_t default_threads();

/// Exhaustive minimum over the product of the families; ties go to the
/// lexicographically smallest index tuple. Throws BudgetExceeded.
SolveReport brute_force(const StateFamilies& fams,
                        const BruteForceOptions& opts = {});

/// One application of the fixed-point map: choose the envelope argmins at z
/// and return the x-part of their distinctly-typed intersection point.
PointX step_F(const StateFamilies& fams, const PointX& z);

/// Applies step_F from x0 until two consecutive points coincide exactly.
/// Throws IterationCapExceeded with the tail of the trace in the message.
SolveReport iterate(const StateFamilies& fams, const PointX& x0,
                    const IterateOptions& opts = {});

/// Shrinks R from [m] to { k in R : |g_{k|R}(x_hat) - y_hat| <= eq_tol }
/// until stable and returns the restricted argmin chain.
PruneResult prune(const StateFamilies& fams, const PointX& x_hat,
                  const Rational& y_hat, const Rational& eq_tol = Rational(0));

/// Central-cut ellipsoid maximizing y over { x in box, y >= y_floor,
/// y <= h(x) }, in double precision. Throws BudgetExceeded when no feasible
/// center was ever found; otherwise returns the best center (converged
/// tells whether the gap reached eps).
EllipsoidResult ellipsoid_max_y(const StateFamilies& fams, const Box& box,
                                const EllipsoidOptions& opts = {});

/// Box [-B, B]^{m-1} with B = (max cost - min cost) / min_S q_0(S), at
/// least 1. Every distinctly-typed intersection point has its x inside it.
Box auto_box(const StateFamilies& fams);

/// Shift c such that every cost + c >= 1 (zero when already so).
Rational cost_shift_for(const StateFamilies& fams);

/// Default ellipsoid oracle budget 10 m^2 (phi + 64).
std::size_t default_ellipsoid_budget(const StateFamilies& fams);

SolveReport solve(const StateFamilies& fams, Method method,
                  const SolveOptions& opts = {});

}  // namespace mcpoly
