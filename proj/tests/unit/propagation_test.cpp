#include <gtest/gtest.h>

#include <random>

#include "kcw/errors.hpp"
#include "kcw/propagation.hpp"
#include "oracles.hpp"

using namespace kcw;

namespace {

ClauseSet diff_w2_u3() {
  return {{2, 3, 4}, {-4, 2}, {-2, 1, 5}, {-5, -2}, {-3, 1, 6}, {-6, -3},
          {7, 8, 9}, {-9, 7}, {-7, -1, 10}, {-10, -7}, {-8, -1, 11}, {-11, -8}};
}

// {a1,-a2}, {a2,-a3}, ..., {a_{q-1},-a_q}, {a_q,a1}.
ClauseSet chain(int q) {
  std::vector<Clause> cs;
  for (int i = 1; i < q; ++i) cs.push_back(Clause{i, -(i + 1)});
  cs.push_back(Clause{q, 1});
  return ClauseSet(std::move(cs));
}

}  // namespace

TEST(Rk, UnitChain) {
  PropagationResult r = r_k(ClauseSet{{1}, {-1, 2}}, 1);
  EXPECT_FALSE(r.refuted);
  EXPECT_TRUE(r.reduced.empty());
  EXPECT_EQ(r.assigned, (PartialAssignment{1, 2}));
}

TEST(Rk, BaseCase) {
  EXPECT_TRUE(r_k(ClauseSet{{}}, 0).refuted);
  EXPECT_FALSE(r_k(ClauseSet{{1}, {-1}}, 0).refuted);
  EXPECT_TRUE(r_k(ClauseSet{{1}, {-1}}, 1).refuted);
}

TEST(Rk, HardnessThreeExample) {
  EXPECT_FALSE(r_k(diff_w2_u3(), 2).refuted);
  EXPECT_TRUE(r_k(diff_w2_u3(), 3).refuted);
}

TEST(Rk, RefutedIffReducedIsBottom) {
  std::mt19937 rng(21);
  for (int round = 0; round < 300; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 6, 9, 3);
    for (unsigned k = 0; k <= 3; ++k) {
      PropagationResult r = r_k(f, k);
      EXPECT_EQ(r.refuted, r.reduced == ClauseSet{{}});
      if (!r.refuted) {
        EXPECT_EQ(apply(r.assigned, f), r.reduced);
      }
    }
  }
}

TEST(Rk, MonotoneInK) {
  std::mt19937 rng(22);
  for (int round = 0; round < 300; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 6, 10, 3);
    bool before = false;
    for (unsigned k = 0; k <= 5; ++k) {
      const bool now = r_k(f, k).refuted;
      if (before) {
        EXPECT_TRUE(now);
      }
      before = now;
    }
  }
}

TEST(Rk, MatchesReferenceUnderShuffledLiteralOrders) {
  std::mt19937 gen(23);
  for (int round = 0; round < 60; ++round) {
    ClauseSet f = oracle::random_clause_set(gen, 7, 9, 3);
    for (unsigned k = 0; k <= 3; ++k) {
      const ClauseSet ours = r_k(f, k).reduced;
      for (int order = 0; order < 10; ++order) {
        std::mt19937 rng(static_cast<unsigned>(round * 100 + order));
        ASSERT_EQ(oracle::reduce(f, k, rng), ours) << f.to_string() << " k=" << k;
      }
    }
  }
}

TEST(Rk, AssignmentsAreForced) {
  std::mt19937 rng(24);
  for (int round = 0; round < 200; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 8, 10, 3);
    if (!oracle::satisfiable(f)) continue;
    PropagationResult r = r_k(f, 2);
    for (Literal x : r.assigned.true_literals()) {
      EXPECT_FALSE(oracle::satisfiable(apply(PartialAssignment{-x.value()}, f)));
    }
  }
}

TEST(Rk, R1IsUnitPropagationR2IsFailedLiteralElimination) {
  // r_1 needs a unit; r_2 finds the failed literal -1.
  ClauseSet f{{1, 2}, {1, -2}, {-1, 3, 4}};
  EXPECT_EQ(r_k(f, 1).reduced, f);
  EXPECT_EQ(r_k(f, 2).reduced, (ClauseSet{{3, 4}}));
}

TEST(RInf, Examples) {
  PropagationResult r = r_inf(ClauseSet{{1}, {2, 3}});
  EXPECT_EQ(r.reduced, (ClauseSet{{2, 3}}));
  EXPECT_EQ(r.assigned, (PartialAssignment{1}));
  EXPECT_TRUE(r_inf(ClauseSet{{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}).refuted);
  ClauseSet free{{1, 2}, {-1, -2}};
  EXPECT_EQ(r_inf(free).reduced, free);
}

TEST(RInf, LeavesNoForcedLiteral) {
  std::mt19937 rng(25);
  for (int round = 0; round < 200; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 8, 10, 3);
    PropagationResult r = r_inf(f);
    if (r.refuted) {
      EXPECT_FALSE(oracle::satisfiable(f));
      continue;
    }
    EXPECT_TRUE(forced_literals(r.reduced).literals.empty());
  }
}

TEST(Forced, Examples) {
  EXPECT_EQ(forced_literals(ClauseSet{{1}}).literals, std::vector<Literal>{Literal(1)});
  EXPECT_TRUE(forced_literals(ClauseSet{{1, 2}, {-1, -2}}).literals.empty());
  ForcedLiterals chain5 = forced_literals(chain(5));
  EXPECT_NE(std::find(chain5.literals.begin(), chain5.literals.end(), Literal(1)), chain5.literals.end());
  EXPECT_TRUE(forced_literals(ClauseSet{{}}).all);
}

TEST(Forced, MatchesDefinition) {
  std::mt19937 rng(26);
  for (int round = 0; round < 200; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 7, 8, 3);
    if (!oracle::satisfiable(f)) continue;
    std::vector<Literal> expected;
    for (Var v : f.vars()) {
      for (int x : {v, -v}) {
        if (!oracle::satisfiable(apply(PartialAssignment{-x}, f))) expected.emplace_back(x);
      }
    }
    EXPECT_EQ(forced_literals(f).literals, expected);
  }
}

TEST(SatOracle, Basics) {
  EXPECT_TRUE(sat_oracle(ClauseSet{}).sat);
  EXPECT_FALSE(sat_oracle(ClauseSet{{}}).sat);
  ClauseSet smu{{1, 2}, {1, -2}, {-1, 3}, {-1, -3}};
  EXPECT_FALSE(sat_oracle(smu).sat);
  for (const Clause& c : smu) {
    SatAnswer a = sat_oracle(smu.without(c));
    ASSERT_TRUE(a.sat);
    EXPECT_TRUE(apply(*a.model, smu.without(c)).empty());
  }
}

TEST(SatOracle, Cap) {
  Limits tight;
  tight.sat_vars = 3;
  EXPECT_THROW(sat_oracle(ClauseSet{{1, 2, 3, 4}}, tight), CapExceeded);
}

TEST(SatOracle, AgreesWithTruthTable) {
  std::mt19937 rng(27);
  for (int round = 0; round < 300; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 8, 14, 3);
    EXPECT_EQ(sat_oracle(f).sat, oracle::satisfiable(f));
  }
}
