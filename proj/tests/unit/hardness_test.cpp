#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kcw/errors.hpp"
#include "kcw/families.hpp"
#include "kcw/hardness.hpp"
#include "kcw/primes.hpp"
#include "oracles.hpp"

using namespace kcw;

namespace {

ClauseSet diff_w2_u3() {
  return {{2, 3, 4}, {-4, 2}, {-2, 1, 5}, {-5, -2}, {-3, 1, 6}, {-6, -3},
          {7, 8, 9}, {-9, 7}, {-7, -1, 10}, {-10, -7}, {-8, -1, 11}, {-11, -8}};
}

ClauseSet chain(int q) {
  std::vector<Clause> cs;
  for (int i = 1; i < q; ++i) cs.push_back(Clause{i, -(i + 1)});
  cs.push_back(Clause{q, 1});
  return ClauseSet(std::move(cs));
}

// Random unsatisfiable Horn clause-set, optionally shrunk to a minimally
// unsatisfiable one.
ClauseSet random_horn_unsat(std::mt19937& rng, unsigned n, bool minimal) {
  for (;;) {
    std::uniform_int_distribution<int> var(1, static_cast<int>(n));
    std::uniform_int_distribution<unsigned> len(1, 4);
    std::vector<Clause> cs;
    for (unsigned i = 0; i < n + 3; ++i) {
      std::vector<Literal> lits;
      const unsigned l = len(rng);
      const int head = var(rng);
      if (std::bernoulli_distribution(0.7)(rng)) lits.emplace_back(head);
      for (unsigned j = 1; j < l; ++j) {
        const int v = var(rng);
        if (v != head) lits.emplace_back(-v);
      }
      if (!lits.empty()) cs.emplace_back(lits);
    }
    ClauseSet f(cs);
    if (oracle::satisfiable(f)) continue;
    if (!minimal) return f;
    for (std::size_t i = 0; i < f.size();) {
      ClauseSet g = f.without(f[i]);
      if (!oracle::satisfiable(g)) {
        f = g;
      } else {
        ++i;
      }
    }
    return f;
  }
}

std::size_t max_len(const ClauseSet& f) {
  std::size_t m = 0;
  for (const Clause& c : f) m = std::max(m, c.size());
  return m;
}

}  // namespace

TEST(KResolution, Examples) {
  EXPECT_TRUE(k_res_refutes(ClauseSet{{}}, 0).refuted);
  EXPECT_TRUE(k_res_refutes(diff_w2_u3(), 2).refuted);
  EXPECT_FALSE(k_res_refutes(diff_w2_u3(), 1).refuted);
  EXPECT_FALSE(k_res_refutes(ClauseSet{{1, 2}}, 5).refuted);
}

TEST(KResolution, TraceIsAValidDerivation) {
  KResolution r = k_res_refutes(diff_w2_u3(), 2);
  ASSERT_TRUE(r.refuted);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_TRUE(r.trace.back().clause.empty());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const ResolutionStep& s = r.trace[i];
    if (!s.left) {
      EXPECT_TRUE(diff_w2_u3().contains(s.clause));
      continue;
    }
    ASSERT_LT(*s.left, i);
    ASSERT_LT(*s.right, i);
    const Clause& a = r.trace[*s.left].clause;
    const Clause& b = r.trace[*s.right].clause;
    EXPECT_TRUE(a.size() <= 2 || b.size() <= 2);
    EXPECT_EQ(resolve(a, b), s.clause);
  }
}

TEST(KResolution, AgreesWithNaiveClosure) {
  std::mt19937 rng(41);
  for (int round = 0; round < 150; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 6, 10, 3);
    for (unsigned k = 0; k <= 3; ++k) {
      EXPECT_EQ(k_res_refutes(f, k).refuted, oracle::k_resolution_refutes(f, k)) << f.to_string() << " k=" << k;
    }
  }
}

TEST(Hd, Examples) {
  EXPECT_EQ(hd(diff_w2_u3()), 3u);
  EXPECT_EQ(hd(ClauseSet{}), 0u);
  EXPECT_EQ(hd(ClauseSet{{}}), 0u);
  for (unsigned h = 1; h <= 5; ++h) EXPECT_EQ(hd(horn_chain(h).doped.doped), 1u) << h;
  ClauseSet trig{{1, -3, -4}, {2, 3, -4}, {2, -3, 4}, {-2, 3, 4}, {1, 3, 4}, {1, 2}};
  EXPECT_EQ(hd(trig.without(Clause{1, 2})), 2u);
}

TEST(Hd, WitnessPrimeAttainsTheValue) {
  ClauseSet f = extremal_doped(1, 3).doped.doped;
  Measured m = hd_measured(f);
  EXPECT_EQ(m.value, 2u);
  ASSERT_TRUE(m.prime.has_value());
  ClauseSet g = apply(PartialAssignment::falsifying(*m.prime), f);
  std::mt19937 rng(1);
  EXPECT_NE(oracle::reduce(g, 1, rng), (ClauseSet{{}}));
  EXPECT_EQ(oracle::reduce(g, 2, rng), (ClauseSet{{}}));
}

TEST(Hd, AgreesWithAllAssignmentsDefinition) {
  std::mt19937 rng(42);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<unsigned> nv(2, 8), nc(2, 10);
    ClauseSet f = oracle::random_clause_set(rng, nv(rng), nc(rng), 3);
    ASSERT_EQ(hd(f), oracle::hd_by_definition(f)) << f.to_string();
  }
}

TEST(Whd, Examples) {
  EXPECT_EQ(whd(diff_w2_u3()), 2u);
  EXPECT_EQ(whd(ClauseSet{}), 0u);
}

TEST(Whd, AgreesWithAllAssignmentsDefinition) {
  std::mt19937 rng(43);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<unsigned> nv(2, 6), nc(2, 9);
    ClauseSet f = oracle::random_clause_set(rng, nv(rng), nc(rng), 3);
    ASSERT_EQ(whd(f), oracle::whd_by_definition(f)) << f.to_string();
  }
}

TEST(Phd, Examples) {
  EXPECT_EQ(phd(chain(4)), 2u);
  EXPECT_EQ(hd(chain(4)), 1u);
  EXPECT_EQ(phd(ClauseSet{}), 0u);
  Limits tight;
  tight.phd_vars = 3;
  EXPECT_THROW(phd(chain(4), tight), CapExceeded);
}

TEST(Phd, AgreesWithAllAssignmentsDefinition) {
  std::mt19937 rng(44);
  for (int round = 0; round < 40; ++round) {
    std::uniform_int_distribution<unsigned> nv(2, 5), nc(2, 8);
    ClauseSet f = oracle::random_clause_set(rng, nv(rng), nc(rng), 3);
    ASSERT_EQ(phd(f), oracle::phd_by_definition(f)) << f.to_string();
  }
}

TEST(Hierarchy, ChainsOnRandomCorpus) {
  std::mt19937 rng(45);
  for (int round = 0; round < 150; ++round) {
    std::uniform_int_distribution<unsigned> nv(2, 9), nc(2, 12);
    ClauseSet f = oracle::random_clause_set(rng, nv(rng), nc(rng), 3);
    const unsigned h = hd(f), w = whd(f), p = phd(f), s = wid(f);
    EXPECT_LE(w, h);
    EXPECT_LE(h, p);
    EXPECT_LE(p, h + 1);
    EXPECT_LE(w, s);
  }
}

TEST(Hierarchy, StableUnderInstantiation) {
  std::mt19937 rng(46);
  for (int round = 0; round < 100; ++round) {
    ClauseSet f = oracle::random_clause_set(rng, 7, 10, 3);
    std::uniform_int_distribution<int> v(1, 7);
    PartialAssignment phi;
    for (int i = 0; i < 2; ++i) {
      Literal x(std::bernoulli_distribution()(rng) ? v(rng) : -v(rng));
      if (!phi.value(x.var())) phi.set_true(x);
    }
    ClauseSet g = apply(phi, f);
    EXPECT_LE(hd(g), hd(f));
    EXPECT_LE(whd(g), whd(f));
    EXPECT_LE(phd(g), phd(f));
  }
}

TEST(Wid, HornUnsatisfiable) {
  std::mt19937 rng(47);
  for (int round = 0; round < 100; ++round) {
    ClauseSet f = random_horn_unsat(rng, 7, true);
    EXPECT_LE(whd(f), 1u);
    EXPECT_EQ(wid(f), max_len(f)) << f.to_string();
  }
  EXPECT_EQ(wid(ClauseSet{{}}), 0u);
}

TEST(Wid, NonMinimalHornIsBoundedByItsSmallestCore) {
  // wid of an unsatisfiable Horn clause-set is the least maximal clause
  // length over its minimally unsatisfiable subsets.
  std::mt19937 rng(48);
  for (int round = 0; round < 60; ++round) {
    ClauseSet f = random_horn_unsat(rng, 6, false);
    if (f.size() > 12) continue;
    EXPECT_LE(whd(f), 1u);
    std::size_t best = SIZE_MAX;
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1) idx.push_back(i);
      ClauseSet g = f.subset(idx);
      if (!oracle::satisfiable(g)) best = std::min(best, max_len(g));
    }
    EXPECT_EQ(wid(f), best) << f.to_string();
  }
}

TEST(ResLowerBound, ClosedForms) {
  EXPECT_DOUBLE_EQ(res_lower_bound(0, 5), 1.0);
  EXPECT_NEAR(kResolutionSizeBase, std::exp(0.125), 1e-15);
  EXPECT_NEAR(kResolutionSizeBase, 1.1331484, 1e-7);
  EXPECT_NEAR(res_lower_bound(4, 4), std::exp(0.5), 1e-12);
  EXPECT_THROW(res_lower_bound(1, 0), DomainError);
}

TEST(Report, RecordsCappedMeasures) {
  Limits tight;
  tight.phd_vars = 2;
  HardnessReport r = hardness_report(diff_w2_u3(), {}, tight);
  EXPECT_EQ(r.hd->value, 3u);
  EXPECT_EQ(r.whd->value, 2u);
  EXPECT_FALSE(r.phd.has_value());
  EXPECT_EQ(r.capped, std::vector<std::string>{"phd"});
}
