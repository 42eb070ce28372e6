#pragma once

#include <cstdint>
#include <random>

#include "mcpoly/aifv.hpp"
#include "mcpoly/chain.hpp"

namespace mcpoly::gen {

using Rng = std::mt19937_64;

struct StateOptions {
  long cost_min = -4;
  long cost_max = 12;
  /// Costs are k / d with d drawn from 1..max_cost_den.
  long max_cost_den = 6;
  /// Transition weights are drawn from 0..max_weight (type 0 from 1..).
  long max_weight = 6;
  /// Probability that a type j >= 1 gets weight zero.
  double zero_prob = 0.3;
};

State random_state(Rng& rng, std::size_t m, const StateOptions& opts = {});

/// Families of 1..max_states random states each.
StateFamilies random_families(Rng& rng, std::size_t m, std::size_t max_states,
                              const StateOptions& opts = {});

/// Every p_i a positive multiple of 2^{-b}; needs 2^b >= n.
aifv::SourceSpec random_dyadic_source(Rng& rng, std::size_t n, unsigned b);

}  // namespace mcpoly::gen
