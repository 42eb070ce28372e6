#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mcpoly/linalg.hpp"
#include "mcpoly/rational.hpp"

namespace mcpoly {

/// One Markov state: a cost and a transition distribution over the m types.
struct State {
  Rational cost;
  Vector transitions;
  std::string label;
};

/// Throws ValidationError (naming `where`) unless q_j >= 0, sum q_j = 1,
/// q_0 > 0 and the vector has length m.
void validate_state(const State& s, std::size_t m, const std::string& where);

/// The per-type state sets. Family k holds the type-k states.
class StateFamilies {
 public:
  StateFamilies() = default;
  /// Validates every state; throws ValidationError on the first violation.
  StateFamilies(std::size_t m, std::vector<std::vector<State>> families);

  std::size_t m() const { return m_; }
  const std::vector<State>& family(std::size_t k) const { return families_[k]; }
  const std::vector<std::vector<State>>& families() const { return families_; }
  const State& state(std::size_t k, std::size_t i) const {
    return families_[k][i];
  }

  /// Product of family sizes, saturating at SIZE_MAX.
  std::size_t chain_count() const;

  /// Same families with `shift` added to every state cost.
  StateFamilies shifted(const Rational& shift) const;

  Rational min_cost() const;
  Rational max_cost() const;

 private:
  std::size_t m_ = 0;
  std::vector<std::vector<State>> families_;
};

/// One state per type. `indices`, when non-empty, records which member of
/// each family was chosen.
struct Chain {
  std::vector<State> states;
  std::vector<std::size_t> indices;

  std::size_t m() const { return states.size(); }
};

Chain make_chain(const StateFamilies& fams, const std::vector<std::size_t>& idx);

/// Type-k coordinates x_1..x_{m-1}; x_0 is identically zero.
using PointX = std::vector<Rational>;

/// Transition matrix Q with Q(k, j) = q_j(S_k).
Matrix transition_matrix(const Chain& c);

/// Unique stationary distribution of the unichain; exact.
Vector stationary_distribution(const Chain& c);

/// Average steady-state cost sum_k cost(S_k) * pi_k.
Rational cost(const Chain& c);

/// Type-k hyperplane evaluated at x:
///   k == 0: cost(s) + sum_{j>=1} q_j(s) x_j
///   k  > 0: the same minus x_k.
Rational plane_value(std::size_t k, const PointX& x, const State& s);

struct IntersectionPoint {
  PointX x;
  Rational y;
};

/// The unique common point of the m planes y = plane_value(k, x, S_k).
/// Throws SingularMatrix only if the chain violates its invariants.
IntersectionPoint intersection_point(const Chain& c);

/// sum_k plane_value(k, x, S_k) * pi_k; equals cost(c) for every x.
Rational weighted_plane_identity(const Chain& c, const PointX& x);

}  // namespace mcpoly
