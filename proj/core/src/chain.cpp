#include "mcpoly/chain.hpp"

#include <algorithm>
#include <limits>

#include "mcpoly/errors.hpp"

namespace mcpoly {

void validate_state(const State& s, std::size_t m, const std::string& where) {
  const std::string name =
      where + (s.label.empty() ? std::string() : " ('" + s.label + "')");
  if (s.transitions.size() != m)
    throw ValidationError(name + ": transitions has length " +
                          std::to_string(s.transitions.size()) +
                          ", expected " + std::to_string(m));
  Rational total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (s.transitions[j].sign() < 0)
      throw ValidationError(name + ": transitions[" + std::to_string(j) +
                            "] = " + s.transitions[j].str() + " is negative");
    total += s.transitions[j];
  }
  if (total != 1)
    throw ValidationError(name + ": transitions sum to " + total.str() +
                          ", expected 1");
  if (s.transitions[0].sign() <= 0)
    throw ValidationError(name + ": transitions[0] must be positive");
}

StateFamilies::StateFamilies(std::size_t m,
                             std::vector<std::vector<State>> families)
    : m_(m), families_(std::move(families)) {
  if (m_ < 2) throw ValidationError("m must be at least 2");
  if (families_.size() != m_)
    throw ValidationError("expected " + std::to_string(m_) + " families, got " +
                          std::to_string(families_.size()));
  for (std::size_t k = 0; k < m_; ++k) {
    if (families_[k].empty())
      throw ValidationError("families[" + std::to_string(k) + "] is empty");
    for (std::size_t i = 0; i < families_[k].size(); ++i) {
      validate_state(families_[k][i], m_,
                     "families[" + std::to_string(k) + "][" +
                         std::to_string(i) + "]");
    }
  }
}

std::size_t StateFamilies::chain_count() const {
  std::size_t total = 1;
  for (const auto& f : families_) {
    if (total > std::numeric_limits<std::size_t>::max() / f.size())
      return std::numeric_limits<std::size_t>::max();
    total *= f.size();
  }
  return total;
}

StateFamilies StateFamilies::shifted(const Rational& shift) const {
  StateFamilies out = *this;
  for (auto& f : out.families_) {
    for (auto& s : f) s.cost += shift;
  }
  return out;
}

Rational StateFamilies::min_cost() const {
  Rational best = families_.at(0).at(0).cost;
  for (const auto& f : families_)
    for (const auto& s : f) best = std::min(best, s.cost);
  return best;
}

Rational StateFamilies::max_cost() const {
  Rational best = families_.at(0).at(0).cost;
  for (const auto& f : families_)
    for (const auto& s : f) best = std::max(best, s.cost);
  return best;
}

Chain make_chain(const StateFamilies& fams,
                 const std::vector<std::size_t>& idx) {
  if (idx.size() != fams.m()) throw ValidationError("chain index arity");
  Chain c;
  c.indices = idx;
  c.states.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    c.states.push_back(fams.family(k).at(idx[k]));
  return c;
}

Matrix transition_matrix(const Chain& c) {
  const std::size_t m = c.m();
  Matrix q(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j) q(k, j) = c.states[k].transitions.at(j);
  return q;
}

Vector stationary_distribution(const Chain& c) {
  // pi (Q - I) = 0 and sum pi = 1. Column 0 of Q - I is redundant (the
  // columns sum to zero), so its equation is replaced by the normalization.
  const std::size_t m = c.m();
  const Matrix q = transition_matrix(c);
  Matrix a(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      a(j, k) = (j == 0) ? Rational(1) : q(k, j) - (k == j ? 1 : 0);
    }
  }
  Vector rhs(m, Rational(0));
  rhs[0] = 1;
  return solve_linear(a, rhs);
}

Rational cost(const Chain& c) {
  const Vector pi = stationary_distribution(c);
  Rational total = 0;
  for (std::size_t k = 0; k < c.m(); ++k) total += c.states[k].cost * pi[k];
  return total;
}

Rational plane_value(std::size_t k, const PointX& x, const State& s) {
  if (x.size() + 1 != s.transitions.size())
    throw ValidationError("plane_value: point has wrong dimension");
  mpq_class v = s.cost.raw();
  for (std::size_t j = 1; j < s.transitions.size(); ++j)
    v += s.transitions[j].raw() * x[j - 1].raw();
  if (k > 0) v -= x.at(k - 1).raw();
  return Rational(v);
}

IntersectionPoint intersection_point(const Chain& c) {
  // M (-y, x_1, ..., x_{m-1})^T = -cost, where M is Q - I with its first
  // column replaced by ones.
  const std::size_t m = c.m();
  const Matrix q = transition_matrix(c);
  Matrix mm(m, m);
  Vector rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    mm(k, 0) = 1;
    for (std::size_t j = 1; j < m; ++j) mm(k, j) = q(k, j) - (k == j ? 1 : 0);
    rhs[k] = -c.states[k].cost;
  }
  const Vector z = solve_linear(mm, rhs);
  IntersectionPoint p;
  p.y = -z[0];
  p.x.assign(z.begin() + 1, z.end());
  return p;
}

Rational weighted_plane_identity(const Chain& c, const PointX& x) {
  const Vector pi = stationary_distribution(c);
  Rational total = 0;
  for (std::size_t k = 0; k < c.m(); ++k)
    total += plane_value(k, x, c.states[k]) * pi[k];
  return total;
}

}  // namespace mcpoly
