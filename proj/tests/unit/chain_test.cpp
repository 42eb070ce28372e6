#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mcpoly/chain.hpp"
#include "mcpoly/errors.hpp"
#include "oracles.hpp"

using mcpoly::Chain;
using mcpoly::PointX;
using mcpoly::Rational;
using mcpoly::State;
using mcpoly::StateFamilies;

namespace {

State st(Rational cost, std::vector<Rational> q, std::string label = "") {
  return State{cost, std::move(q), std::move(label)};
}

// S_0: cost 1, q = (1/2, 1/2); S_1: cost 2, q = (1, 0).
Chain two_state() {
  return Chain{{st(1, {Rational(1, 2), Rational(1, 2)}), st(2, {1, 0})}, {}};
}

}  // namespace

TEST(StateValidation, NamesTheOffendingField) {
  try {
    mcpoly::validate_state(st(1, {Rational(1, 2), Rational(3, 2)}, "bad"), 2, "families[0][1]");
    FAIL();
  } catch (const mcpoly::ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("families[0][1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bad"), std::string::npos) << msg;
    EXPECT_NE(msg.find("sum"), std::string::npos) << msg;
  }
  EXPECT_THROW(mcpoly::validate_state(st(1, {0, 1}), 2, "s"), mcpoly::ValidationError);
  EXPECT_THROW(mcpoly::validate_state(st(1, {Rational(3, 2), Rational(-1, 2)}), 2, "s"),
               mcpoly::ValidationError);
  EXPECT_THROW(mcpoly::validate_state(st(1, {1}), 2, "s"), mcpoly::ValidationError);
}

TEST(StateFamilies, RejectsBadShapes) {
  EXPECT_THROW(StateFamilies(1, {{st(0, {1})}}), mcpoly::ValidationError);
  EXPECT_THROW(StateFamilies(2, {{st(0, {1, 0})}}), mcpoly::ValidationError);
  EXPECT_THROW(StateFamilies(2, {{st(0, {1, 0})}, {}}), mcpoly::ValidationError);
  const StateFamilies ok(2, {{st(0, {1, 0})}, {st(3, {1, 0}), st(-1, {1, 0})}});
  EXPECT_EQ(ok.chain_count(), 2u);
  EXPECT_EQ(ok.min_cost(), Rational(-1));
  EXPECT_EQ(ok.max_cost(), Rational(3));
  EXPECT_EQ(ok.shifted(2).state(1, 1).cost, Rational(1));
}

TEST(Stationary, AbsorbingAtZero) {
  const Chain c{{st(5, {1, 0, 0}), st(1, {1, 0, 0}), st(2, {1, 0, 0})}, {}};
  const auto pi = mcpoly::stationary_distribution(c);
  EXPECT_EQ(pi, (mcpoly::Vector{Rational(1), Rational(0), Rational(0)}));
  EXPECT_EQ(mcpoly::cost(c), Rational(5));
}

TEST(Stationary, TwoStateByHand) {
  const auto pi = mcpoly::stationary_distribution(two_state());
  EXPECT_EQ(pi[0], Rational(2, 3));
  EXPECT_EQ(pi[1], Rational(1, 3));
  EXPECT_EQ(mcpoly::cost(two_state()), Rational(4, 3));
}

TEST(Stationary, Aifv3ChainMatchesPowerIteration) {
  const auto code = fixture::abcd_code();
  Chain c;
  for (const auto& t : code.trees) c.states.push_back(mcpoly::aifv::to_state(t, code.source, 3));
  const auto pi = mcpoly::stationary_distribution(c);
  const auto approx = oracle::power_iteration(c);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(pi[k].to_double(), static_cast<double>(approx[k]), 1e-12);
    EXPECT_EQ(pi[k], oracle::nearest_fraction(approx[k], 1000));
  }
  EXPECT_EQ(pi, (mcpoly::Vector{Rational(2, 5), Rational(1, 3), Rational(4, 15)}));
}

TEST(Stationary, EntriesAreProbabilities) {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Chain c = oracle::random_chain(rng, 2 + i % 4);
    const auto pi = mcpoly::stationary_distribution(c);
    Rational total = 0;
    for (const auto& v : pi) {
      EXPECT_GE(v, Rational(0));
      EXPECT_LE(v, Rational(1));
      total += v;
    }
    EXPECT_EQ(total, Rational(1));
    const auto expected = oracle::stationary(c);
    for (std::size_t k = 0; k < c.m(); ++k) EXPECT_EQ(pi[k].raw(), expected[k]);
  }
}

TEST(Cost, ConstantRewardIsInvariant) {
  oracle::Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    Chain c = oracle::random_chain(rng, 3);
    for (auto& s : c.states) s.cost = Rational(7, 3);
    EXPECT_EQ(mcpoly::cost(c), Rational(7, 3));
    EXPECT_EQ(mcpoly::intersection_point(c).y, Rational(7, 3));
  }
}

TEST(PlaneValue, Definitions) {
  const State s = st(Rational(13, 8), {Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  EXPECT_EQ(mcpoly::plane_value(0, {1, 1}, s), Rational(19, 8));
  EXPECT_EQ(mcpoly::plane_value(2, {0, 0}, s), s.cost);
  const PointX x{Rational(3, 7), Rational(-2)};
  EXPECT_EQ(mcpoly::plane_value(1, x, s) + x[0], mcpoly::plane_value(0, x, s));
}

TEST(IntersectionPoint, TwoStateByHand) {
  const auto ip = mcpoly::intersection_point(two_state());
  EXPECT_EQ(ip.x, (PointX{Rational(2, 3)}));
  EXPECT_EQ(ip.y, Rational(4, 3));
  EXPECT_EQ(mcpoly::weighted_plane_identity(two_state(), {7}), Rational(4, 3));
}

TEST(IntersectionPoint, RandomChainsHeightEqualsCost) {
  oracle::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const Chain c = oracle::random_chain(rng, 2 + i % 3);
    const auto ip = mcpoly::intersection_point(c);
    const Rational expected = oracle::chain_cost(c);
    EXPECT_EQ(ip.y, expected);
    EXPECT_EQ(mcpoly::cost(c), expected);
    for (std::size_t k = 0; k < c.m(); ++k)
      EXPECT_EQ(mcpoly::plane_value(k, ip.x, c.states[k]), ip.y);
    for (int t = 0; t < 5; ++t) {
      const PointX x = oracle::random_point(rng, c.m());
      EXPECT_EQ(mcpoly::weighted_plane_identity(c, x), expected);
      Rational lowest = mcpoly::plane_value(0, x, c.states[0]);
      for (std::size_t k = 1; k < c.m(); ++k)
        lowest = std::min(lowest, mcpoly::plane_value(k, x, c.states[k]));
      EXPECT_GE(ip.y, lowest);
    }
  }
}
