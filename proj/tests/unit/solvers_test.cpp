#include <gtest/gtest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"
#include "oracles.hpp"

using mcpoly::Method;
using mcpoly::PointX;
using mcpoly::Rational;
using mcpoly::State;
using mcpoly::StateFamilies;

namespace {

StateFamilies hand_instance() {
  return StateFamilies(2, {{State{1, {Rational(1, 2), Rational(1, 2)}, "s0"}},
                           {State{2, {1, 0}, "s1"}}});
}

Rational oracle_min_cost(const StateFamilies& fams) {
  std::vector<std::size_t> idx(fams.m(), 0);
  std::optional<Rational> best;
  while (true) {
    const Rational c = oracle::chain_cost(mcpoly::make_chain(fams, idx));
    if (!best || c < *best) best = c;
    std::size_t k = fams.m();
    while (k > 0) {
      --k;
      if (++idx[k] < fams.family(k).size()) break;
      idx[k] = 0;
      if (k == 0) return *best;
    }
  }
}

}  // namespace

TEST(BruteForce, PicksCheaperTypeOneState) {
  const StateFamilies fams(2, {{State{1, {Rational(1, 2), Rational(1, 2)}, ""}},
                               {State{2, {1, 0}, ""}, State{1, {1, 0}, ""}}});
  const auto r = mcpoly::brute_force(fams);
  EXPECT_EQ(r.cost, Rational(1));
  EXPECT_EQ(r.chain.indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.solver, "brute");
}

TEST(BruteForce, TiesGoToLexicographicallySmallest) {
  const StateFamilies fams(2, {{State{1, {1, 0}, ""}, State{1, {1, 0}, ""}},
                               {State{3, {1, 0}, ""}, State{3, {1, 0}, ""}}});
  EXPECT_EQ(mcpoly::brute_force(fams).chain.indices, (std::vector<std::size_t>{0, 0}));
}

TEST(BruteForce, BudgetAndThreads) {
  oracle::Rng rng(3);
  const StateFamilies fams = oracle::random_families(rng, 3, 4);
  mcpoly::BruteForceOptions tiny;
  tiny.budget = 0;
  EXPECT_THROW(mcpoly::brute_force(fams, tiny), mcpoly::BudgetExceeded);
  mcpoly::BruteForceOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = mcpoly::brute_force(fams, one);
  const auto b = mcpoly::brute_force(fams, four);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.chain.indices, b.chain.indices);
}

TEST(StepF, HandInstanceAndSingletonConstancy) {
  const StateFamilies fams = hand_instance();
  EXPECT_EQ(mcpoly::step_F(fams, {0}), (PointX{Rational(2, 3)}));
  EXPECT_EQ(mcpoly::step_F(fams, {Rational(-17, 3)}), (PointX{Rational(2, 3)}));
  EXPECT_EQ(mcpoly::step_F(fams, {Rational(2, 3)}), (PointX{Rational(2, 3)}));
}

TEST(Iterate, SingletonFamiliesStopQuickly) {
  const auto r = mcpoly::iterate(hand_instance(), {Rational(5)});
  EXPECT_LE(r.iterations, 2u);
  EXPECT_EQ(r.cost, Rational(4, 3));
  EXPECT_FALSE(r.trace.empty());
}

TEST(Iterate, FixedPointEqualities) {
  oracle::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 2 + i % 3, 4);
    const auto r = mcpoly::iterate(fams, PointX(fams.m() - 1, Rational(0)));
    const auto env = mcpoly::envelope(fams, *r.x_final);
    EXPECT_EQ(env.h, r.cost);
    for (const auto& g : env.per_type) EXPECT_EQ(g.value, r.cost);
    EXPECT_EQ(mcpoly::cost(r.chain), r.cost);
  }
}

TEST(Iterate, AgreesWithBruteForceAndOracle) {
  oracle::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 2 + i % 2, 4);
    const auto it = mcpoly::iterate(fams, PointX(fams.m() - 1, Rational(0)));
    const auto bf = mcpoly::brute_force(fams);
    EXPECT_EQ(it.cost, bf.cost);
    EXPECT_EQ(bf.cost, oracle_min_cost(fams));
  }
}

TEST(Iterate, StartPointDoesNotChangeCost) {
  oracle::Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 3, 4);
    const Rational expected = mcpoly::brute_force(fams).cost;
    for (int s = 0; s < 10; ++s)
      EXPECT_EQ(mcpoly::iterate(fams, oracle::random_point(rng, 3, -20, 20)).cost, expected);
  }
}

TEST(Iterate, CapIsEnforced) {
  oracle::Rng rng(15);
  StateFamilies fams;
  PointX x0;
  // Find an instance that needs at least two steps from its start point.
  for (;;) {
    fams = oracle::random_families(rng, 3, 4);
    x0 = oracle::random_point(rng, 3, -20, 20);
    if (mcpoly::iterate(fams, x0).iterations >= 3) break;
  }
  mcpoly::IterateOptions cap;
  cap.max_iterations = 1;
  EXPECT_THROW(mcpoly::iterate(fams, x0, cap), mcpoly::IterationCapExceeded);
}

TEST(Solve, LowerBoundOfHEverywhere) {
  oracle::Rng rng(16);
  for (int i = 0; i < 40; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 2 + i % 2, 3);
    const Rational best = mcpoly::brute_force(fams).cost;
    for (int s = 0; s < 100; ++s)
      EXPECT_GE(best, mcpoly::envelope(fams, oracle::random_point(rng, fams.m(), -10, 10)).h);
  }
}

TEST(Prune, FullFamiliesAtFixedPointKeepEverything) {
  const StateFamilies fams = hand_instance();
  const auto r = mcpoly::prune(fams, {Rational(2, 3)}, Rational(4, 3));
  EXPECT_TRUE(r.restriction.is_full());
  EXPECT_EQ(r.shrink_steps, 0u);
  EXPECT_EQ(r.cost, Rational(4, 3));
}

TEST(Prune, ShrinksToTypeZeroWithTransientTypeOne) {
  // Type 1 is never entered by the cheap type-0 state. At x = 0 the top of
  // the polytope is y = 1 but g_1 = 10.
  const StateFamilies fams(2, {{State{5, {Rational(1, 2), Rational(1, 2)}, "loop"},
                                State{1, {1, 0}, "stay"}},
                               {State{10, {1, 0}, "t"}}});
  const auto r = mcpoly::prune(fams, {0}, Rational(1));
  EXPECT_EQ(r.restriction, mcpoly::Restriction(2, {0}));
  EXPECT_EQ(r.shrink_steps, 1u);
  EXPECT_EQ(r.cost, Rational(1));
  EXPECT_EQ(r.chain.indices[0], 1u);
  EXPECT_EQ(mcpoly::brute_force(fams).cost, Rational(1));
  EXPECT_EQ(mcpoly::stationary_distribution(r.chain)[1], Rational(0));
}

TEST(Prune, ConstructedTransientInstances) {
  oracle::Rng rng(17);
  int found = 0;
  for (int tries = 0; tries < 2000 && found < 30; ++tries) {
    const auto inst = oracle::transient_instance(rng, 2 + tries % 2);
    if (!inst) continue;
    ++found;
    const auto r = mcpoly::prune(inst->fams, inst->x_hat, inst->y_hat);
    EXPECT_EQ(r.cost, inst->y_hat);
    EXPECT_GE(r.shrink_steps, 1u);
    EXPECT_LE(r.shrink_steps, inst->fams.m() - 1);
  }
  EXPECT_EQ(found, 30);
}

TEST(Prune, WrongHeightDiverges) {
  EXPECT_THROW(mcpoly::prune(hand_instance(), {Rational(2, 3)}, Rational(1)),
               mcpoly::PruneDiverged);
}

TEST(Ellipsoid, HandInstanceWithinEps) {
  mcpoly::EllipsoidOptions opts;
  const auto r = mcpoly::ellipsoid_max_y(hand_instance(), mcpoly::Box::unit(2), opts);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.y, 4.0 / 3.0, 1e-9);
}

TEST(Ellipsoid, SingletonFamiliesMatchIntersection) {
  oracle::Rng rng(18);
  for (int i = 0; i < 20; ++i) {
    const std::size_t m = 2 + i % 2;
    std::vector<std::vector<State>> f;
    for (std::size_t k = 0; k < m; ++k) {
      State s = oracle::random_state(rng, m);
      s.cost = abs(s.cost) + 1;
      f.push_back({s});
    }
    const StateFamilies fams(m, f);
    const auto ip = mcpoly::intersection_point(mcpoly::make_chain(fams, std::vector<std::size_t>(m, 0)));
    const auto r = mcpoly::ellipsoid_max_y(fams, mcpoly::auto_box(fams));
    EXPECT_NEAR(r.y, ip.y.to_double(), 1e-9);
  }
}

TEST(Solve, AllMethodsAgree) {
  oracle::Rng rng(19);
  for (int i = 0; i < 60; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 2 + i % 2, 4);
    const auto bf = mcpoly::solve(fams, Method::BruteForce);
    const auto it = mcpoly::solve(fams, Method::Iterate);
    const auto el = mcpoly::solve(fams, Method::Ellipsoid);
    EXPECT_EQ(bf.cost, it.cost);
    EXPECT_EQ(bf.cost, el.cost);
    ASSERT_TRUE(el.ellipsoid.has_value());
    EXPECT_NEAR(el.ellipsoid->y, bf.cost.to_double(), 1e-9);
    EXPECT_EQ(mcpoly::cost(el.chain), el.cost);
  }
}

TEST(Solve, EqualCostsEverywhere) {
  oracle::Rng rng(20);
  std::vector<std::vector<State>> f(3);
  for (auto& fam : f)
    for (int i = 0; i < 3; ++i) {
      State s = oracle::random_state(rng, 3);
      s.cost = Rational(-5, 2);
      fam.push_back(s);
    }
  const StateFamilies fams(3, f);
  for (Method m : {Method::BruteForce, Method::Iterate, Method::Ellipsoid})
    EXPECT_EQ(mcpoly::solve(fams, m).cost, Rational(-5, 2)) << mcpoly::to_string(m);
}

TEST(Solve, CodeFamiliesAllMethodsAgree) {
  const auto two = mcpoly::aifv::families_from_source(fixture::abcd(), 2);
  const auto it2 = mcpoly::solve(two, Method::Iterate);
  EXPECT_EQ(it2.cost, mcpoly::solve(two, Method::BruteForce).cost);
  EXPECT_EQ(it2.cost, mcpoly::solve(two, Method::Ellipsoid).cost);
  // Too many chains for brute force at m = 3.
  const auto three = mcpoly::aifv::families_from_source(fixture::abcd(), 3);
  EXPECT_EQ(mcpoly::solve(three, Method::Iterate).cost,
            mcpoly::solve(three, Method::Ellipsoid).cost);
}

TEST(Solve, ParseMethod) {
  EXPECT_EQ(mcpoly::parse_method("brute"), Method::BruteForce);
  EXPECT_EQ(mcpoly::parse_method("ellipsoid"), Method::Ellipsoid);
  EXPECT_THROW(mcpoly::parse_method("simplex"), mcpoly::ParseError);
}

TEST(Solve, CostShiftOnlyWhenNeeded) {
  const StateFamilies pos(2, {{State{3, {1, 0}, ""}}, {State{2, {1, 0}, ""}}});
  EXPECT_EQ(mcpoly::cost_shift_for(pos), Rational(0));
  const StateFamilies neg(2, {{State{-3, {1, 0}, ""}}, {State{2, {1, 0}, ""}}});
  EXPECT_EQ(mcpoly::cost_shift_for(neg), Rational(4));
}

TEST(Solve, AutoBoxContainsEveryIntersectionPoint) {
  oracle::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const StateFamilies fams = oracle::random_families(rng, 2 + i % 2, 3);
    const auto box = mcpoly::auto_box(fams);
    std::vector<std::size_t> idx(fams.m(), 0);
    for (bool more = true; more;) {
      EXPECT_TRUE(box.contains(mcpoly::intersection_point(mcpoly::make_chain(fams, idx)).x));
      more = false;
      for (std::size_t k = 0; k < fams.m(); ++k) {
        if (++idx[k] < fams.family(k).size()) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  }
}
