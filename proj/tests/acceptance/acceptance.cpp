// One PASS/FAIL line per acceptance criterion. Exact criteria compare with
// tolerance 0; timing bounds are part of the pass condition.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "kcw/compile.hpp"
#include "kcw/families.hpp"
#include "kcw/hardness.hpp"
#include "kcw/mpsdope.hpp"
#include "kcw/primes.hpp"
#include "kcw/trees.hpp"
#include "kcw/trigger.hpp"
#include "oracles.hpp"

using namespace kcw;

namespace {

constexpr unsigned kSeed = 20240601;

// Collects failures of one criterion; `detail` reports the first few.
struct Verdict {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (++failures <= 3) detail += (detail.empty() ? "" : "; ") + what;
  }
};

using Seconds = std::chrono::duration<double>;

bool run(int id, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    ++v.failures;
    v.detail += std::string(v.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && elapsed > budget_s) {
    ++v.failures;
    v.detail += (v.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  const bool ok = v.failures == 0;
  std::printf("%s [%d] %s: %zu checks, %zu failed, %.2f s (budget %s)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
              v.checks, v.failures, elapsed, budget_s > 0 ? (std::to_string(static_cast<int>(budget_s)) + " s").c_str() : "none",
              v.detail.empty() ? "" : " -- ", v.detail.c_str());
  std::fflush(stdout);
  return ok;
}

template <typename T>
std::string str(const T& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

ClauseSet diffw2u2() {
  return {{2, 3, 4}, {-4, 2}, {-2, 1, 5}, {-5, -2}, {-3, 1, 6}, {-6, -3},
          {7, 8, 9}, {-9, 7}, {-7, -1, 10}, {-10, -7}, {-8, -1, 11}, {-11, -8}};
}

ClauseSet trigger_example() { return {{1, -3, -4}, {2, 3, -4}, {2, -3, 4}, {-2, 3, 4}, {1, 3, 4}, {1, 2}}; }

unsigned hts_reference(const LabeledTree& t) {
  if (t.is_leaf()) return 0;
  const unsigned a = hts_reference(t.left()), b = hts_reference(t.right());
  return a == b ? a + 1 : std::max(a, b);
}

// Every full binary tree shape with the given number of leaves, inner nodes
// labelled in preorder from `next`.
std::vector<LabeledTree> all_shapes(unsigned leaves, Var next = 1) {
  if (leaves == 1) return {LabeledTree()};
  std::vector<LabeledTree> out;
  for (unsigned l = 1; l < leaves; ++l) {
    for (const LabeledTree& a : all_shapes(l, next + 1)) {
      const Var after = next + 1 + static_cast<Var>(l - 1);
      for (const LabeledTree& b : all_shapes(leaves - l, after)) out.emplace_back(next, a, b);
    }
  }
  return out;
}

bool horn(const ClauseSet& f) {
  return std::all_of(f.begin(), f.end(), [](const Clause& c) {
    return std::count_if(c.begin(), c.end(), [](Literal x) { return x.positive(); }) <= 1;
  });
}

// Deletion-based minimally unsatisfiable subset.
ClauseSet mus(const ClauseSet& f) {
  std::vector<Clause> cur(f.begin(), f.end());
  for (std::size_t i = 0; i < cur.size();) {
    std::vector<Clause> trial = cur;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!oracle::satisfiable(ClauseSet(trial))) {
      cur = std::move(trial);
    } else {
      ++i;
    }
  }
  return ClauseSet(std::move(cur));
}

std::size_t max_length(const ClauseSet& f) {
  std::size_t m = 0;
  for (const Clause& c : f) m = std::max(m, c.size());
  return m;
}

ClauseSet random_horn(std::mt19937& rng, unsigned n, unsigned c) {
  std::vector<Clause> cs;
  for (unsigned i = 0; i < c; ++i) {
    std::vector<Literal> lits;
    const unsigned len = std::uniform_int_distribution<unsigned>(1, std::min(4u, n))(rng);
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 1);
    std::shuffle(vars.begin(), vars.end(), rng);
    const bool with_positive = std::bernoulli_distribution(0.6)(rng);
    for (unsigned j = 0; j < len; ++j) lits.emplace_back(j == 0 && with_positive ? vars[j] : -vars[j]);
    cs.emplace_back(std::move(lits));
  }
  return ClauseSet(std::move(cs));
}

void expect_k_base(Verdict& v, const KBase& b, const ClauseSet& f, const ClauseSet& primes, unsigned k,
                   const std::string& label) {
  v.expect(oracle::equivalent(b.clauses, f), label + ": not equivalent");
  v.expect(hd(b.clauses) <= k, label + ": hd above level");
  for (std::size_t i = 0; i < b.clauses.size(); ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < b.clauses.size(); ++j)
      if (j != i) rest.push_back(j);
    const ClauseSet smaller = b.clauses.subset(rest);
    v.expect(!(oracle::equivalent(smaller, f) && hd_at_most(smaller, primes, k)),
             label + ": clause " + b.clauses[i].to_string() + " removable");
  }
}

}  // namespace

int main() {
  std::printf("acceptance, seed %u\n", kSeed);
  bool all = true;

  all &= run(1, "worked examples", 1.0, [](Verdict& v) {
    v.expect(pure_clause(ClauseSet{{1, 2}, {-1, -3}}) == Clause{2, -3}, "pure clause");
    const LabeledTree six = parse_term("(1 (2 (3 . .) (4 . .)) (5 . .))");
    const TreeStats s = tree_stats(six);
    v.expect(s.hts == 2 && s.height == 3, "hts/height " + str(s.hts) + "/" + str(s.height));
    const ClauseSet listed{{1, 2, 3}, {1, 2, -3}, {1, -2, 4}, {1, -2, -4}, {-1, 5}, {-1, -5}};
    v.expect(smu1(six) == listed, "smu1 " + smu1(six).to_string());
    const ClauseSet inst{{1, 4}, {1, -4}, {-1, 5}, {-1, -5}};
    v.expect(apply(PartialAssignment{2}, smu1(six)) == inst, "instantiation on clauses");
    v.expect(smu1(apply_to_tree(six, Literal(2))) == inst, "instantiation on the tree");
    const LabeledTree pt = parse_term("(1 (2 (3 . .) (4 . .)) (5 (6 . .) .))");
    v.expect(pure_of_leafset(pt, {"000", "010", "011", "11"}) == Clause{3, -5}, "pure of leaf set");
    const LabeledTree cv = parse_term("(1 (2 . .) (3 . .))");
    v.expect(clause_CV(cv, {"00", "10"}) == Clause{2, 3, 4, 6}, "C_V " + clause_CV(cv, {"00", "10"}).to_string());
  });

  all &= run(2, "hardness witnesses", 30.0, [](Verdict& v) {
    const ClauseSet f = diffw2u2();
    v.expect(whd(f) == 2, "whd " + str(whd(f)));
    v.expect(hd(f) == 3, "hd " + str(hd(f)));
    std::mt19937 rng(kSeed);
    int found = 0;
    for (int round = 0; round < 4000 && found < 60; ++round) {
      const unsigned n = std::uniform_int_distribution<unsigned>(3, 9)(rng);
      ClauseSet g = random_horn(rng, n, std::uniform_int_distribution<unsigned>(3, 12)(rng));
      if (oracle::satisfiable(g)) continue;
      ++found;
      v.expect(horn(g), "generator produced a non-Horn set");
      v.expect(whd(g) <= 1, "whd of Horn " + g.to_string());
      const ClauseSet m = mus(g);
      v.expect(wid(m) == max_length(m), "wid " + str(wid(m)) + " of MU Horn " + m.to_string());
      v.expect(wid(g) <= max_length(m), "wid of Horn above its MUS length");
    }
    v.expect(found >= 60, "too few Horn instances");
  });

  all &= run(3, "doped prime counts", 0, [](Verdict& v) {
    for (unsigned c = 2; c <= 8; ++c) {
      for (const LabeledTree& t : all_shapes(c)) {
        const ClauseSet f = smu1(t);
        const std::size_t count = prime_implicates(dope(f).doped).primes.size();
        v.expect(count == (std::size_t{1} << c) - 1, to_term(t) + ": " + str(count) + " primes");
      }
    }
    for (unsigned n = 2; n <= 6; ++n) {
      const ClauseSet g = g_n(n);
      const std::size_t mps = mps_enumerate(g).members.size();
      const std::size_t primes = prime_implicates(dope(g).doped).primes.size();
      const std::size_t expected = (std::size_t{1} << n) + n;
      v.expect(mps == expected && primes == expected, "G_" + str(n) + ": " + str(mps) + "/" + str(primes));
    }
  });

  all &= run(4, "bijection roundtrips", 0, [](Verdict& v) {
    std::mt19937 rng(kSeed + 4);
    for (int round = 0; round < 200; ++round) {
      const unsigned c = std::uniform_int_distribution<unsigned>(1, 10)(rng);
      const ClauseSet f = oracle::random_clause_set(rng, 6, c, 3);
      v.expect(mps_via_doping(f) == mps_enumerate(f), "mps families differ on " + f.to_string());
    }
    for (int round = 0; round < 200; ++round) {
      const LabeledTree t = oracle::random_tree(rng, std::uniform_int_distribution<unsigned>(1, 16)(rng));
      v.expect(tsmu1(smu1(t)) == t, "tree roundtrip " + to_term(t));
    }
  });

  all &= run(5, "hd of smu1 trees equals hts", 0, [](Verdict& v) {
    auto check = [&](const LabeledTree& t, bool doped) {
      const unsigned h = hts_reference(t);
      const ClauseSet f = smu1(t);
      v.expect(hd(f) == h, to_term(t) + ": hd(smu1) " + str(hd(f)) + " vs hts " + str(h));
      if (doped) {
        const unsigned d = hd(dope(f).doped);
        v.expect(d == h, to_term(t) + ": hd(D) " + str(d) + " vs hts " + str(h));
      }
    };
    for (unsigned c = 1; c <= 8; ++c)
      for (const LabeledTree& t : all_shapes(c)) check(t, true);
    std::mt19937 rng(kSeed + 5);
    for (int round = 0; round < 200; ++round) {
      const unsigned c = std::uniform_int_distribution<unsigned>(1, 16)(rng);
      check(oracle::random_tree(rng, c), c <= 11);
    }
    for (unsigned k = 0; k <= 2; ++k) {
      for (unsigned h = k + 1; h <= 5; ++h) {
        const LabeledTree t = extremal_tree(k + 1, h);
        check(t, tree_stats(t).nlvs <= 11);
        v.expect(hts_reference(t) == k + 1, "hts of exhst(" + str(k + 1) + "," + str(h) + ")");
      }
    }
  });

  all &= run(6, "trigger hypergraph example", 0, [](Verdict& v) {
    const ClauseSet f = trigger_example();
    v.expect(prime_implicates(f).primes == f, "primes differ from F");
    auto edge = [&](unsigned k, std::initializer_list<Clause> cs) {
      const TriggerHypergraph g = trigger_hypergraph(f, k);
      std::vector<std::size_t> want;
      for (const Clause& c : cs) want.push_back(*f.index_of(c));
      std::sort(want.begin(), want.end());
      return g.edges[*f.index_of(Clause{1, 2})] == want;
    };
    v.expect(edge(1, {Clause{1, 2}}), "E^1 of C6");
    v.expect(edge(2, {Clause{1, -3, -4}, Clause{2, 3, -4}, Clause{2, -3, 4}, Clause{1, 3, 4}, Clause{1, 2}}),
             "E^2 of C6");
    const TriggerHypergraph t2 = trigger_hypergraph(f, 2);
    for (unsigned k : {3u, 4u}) v.expect(trigger_hypergraph(f, k).edges == t2.edges, "T_" + str(k) + " != T_2");
    std::vector<ClauseSet> corpus{f, diffw2u2(), horn_chain(3).doped.doped, extremal_doped(1, 2).doped.doped,
                                  extremal_doped(2, 3).doped.doped};
    std::mt19937 rng(kSeed + 6);
    for (int i = 0; i < 40; ++i) corpus.push_back(oracle::random_clause_set(rng, 6, 6, 3));
    for (const ClauseSet& g : corpus) {
      for (unsigned k = 0; k <= 3; ++k) {
        const TriggerHypergraph h = trigger_hypergraph(g, k);
        const SearchResult tau = transversal_number(h), nu = matching_number(h);
        // Certified when nu's upper bound is at most tau's lower bound; the
        // searches may stop at the node cap with bounds only.
        v.expect(nu.upper <= tau.lower, "tau >= nu not certified for k=" + str(k) + " on " + g.to_string());
      }
    }
  });

  all &= run(7, "matching lower bound from depth-k separation", 0, [](Verdict& v) {
    const std::pair<unsigned, unsigned> rows[] = {{0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {2, 3}};
    for (auto [k, h] : rows) {
      const auto start = std::chrono::steady_clock::now();
      const std::string row = "(" + str(k) + "," + str(h) + ")";
      const TreeInstance inst = extremal_doped(k, h);
      const TriggerHypergraph g = trigger_hypergraph(inst.doped.doped, k);
      const unsigned m = 1 + h - k;
      const std::uint64_t bound = oracle::binomial(m, m / 2);
      const std::vector<LeafSet> w = sperner_witness(inst.tree, k);
      v.expect(w.size() == bound, row + ": witness size " + str(w.size()));
      std::vector<std::vector<std::size_t>> edges;
      for (const LeafSet& s : w) {
        auto idx = g.vertices.index_of(clause_CV(inst.doped, inst.tree, s));
        v.expect(idx.has_value(), row + ": C_V is not a prime");
        if (idx) edges.push_back(g.edges[*idx]);
      }
      for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
          std::vector<std::size_t> common;
          std::set_intersection(edges[i].begin(), edges[i].end(), edges[j].begin(), edges[j].end(),
                                std::back_inserter(common));
          v.expect(common.empty(), row + ": witness edges intersect");
        }
      }
      const SearchResult nu = matching_number(g);
      const SearchResult tau = transversal_number(g);
      v.expect(nu.lower >= bound, row + ": nu " + str(nu.value) + " below " + str(bound));
      v.expect(nu.upper <= tau.lower, row + ": tau >= nu not certified");
      const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
      v.expect(secs < 300.0, row + ": over 5 minutes");
      std::printf("  row %s: primes %zu, nu %zu, tau %zu, bound %llu, %.2f s\n", row.c_str(), g.vertices.size(),
                  nu.value, tau.value, static_cast<unsigned long long>(bound), secs);
    }
  });

  all &= run(8, "minimum equivalent size versus clause count", 0, [](Verdict& v) {
    const ClauseSet f12 = extremal_doped(1, 2).doped.doped;
    const EquivalentSize r = min_equivalent_size(f12, 1, SearchMode::exhaustive);
    const std::size_t tau = transversal_number(trigger_hypergraph(f12, 1)).value;
    v.expect(prime_implicates(f12).primes.size() == 15, "F^1_2 prime count");
    v.expect(r.found && r.exact, "F^1_2 search not exact");
    v.expect(r.size >= tau, "min " + str(r.size) + " below tau " + str(tau));
    v.expect(r.size > f12.size() && f12.size() == 4, "min " + str(r.size) + " vs c " + str(f12.size()));
    v.expect(oracle::equivalent(r.representative, f12) && whd(r.representative) <= 1, "representative");
    std::printf("  F^1_2: c 4, tau %zu, min %zu\n", tau, r.size);
    for (unsigned h = 3; h <= 5; ++h) {
      const ClauseSet f = extremal_doped(0, h).doped.doped;
      const EquivalentSize e = min_equivalent_size(f, 0, SearchMode::exhaustive);
      v.expect(f.size() == h + 1, "c(F^0_" + str(h) + ")");
      v.expect(e.found && e.exact && e.size == (std::size_t{1} << (h + 1)) - 1,
               "F^0_" + str(h) + ": min " + str(e.size));
      std::printf("  F^0_%u: c %zu, min %zu\n", h, f.size(), e.size);
    }
  });

  all &= run(9, "oracle equivalence", 0, [](Verdict& v) {
    std::mt19937 rng(kSeed + 9);
    for (int round = 0; round < 200; ++round) {
      const unsigned n = std::uniform_int_distribution<unsigned>(2, 8)(rng);
      const ClauseSet f = oracle::random_clause_set(rng, n, std::uniform_int_distribution<unsigned>(1, 8)(rng), 3);
      v.expect(hd(f) == oracle::hd_by_definition(f), "hd on " + f.to_string());
    }
    for (int round = 0; round < 200; ++round) {
      const unsigned n = std::uniform_int_distribution<unsigned>(2, 10)(rng);
      const ClauseSet f = oracle::random_clause_set(rng, n, std::uniform_int_distribution<unsigned>(1, 10)(rng), 4);
      v.expect(prime_implicates(f).primes == oracle::prime_implicates(f), "primes on " + f.to_string());
      v.expect(canon_primes(f, f.size()).clauses == oracle::prime_implicates(f), "canon primes on " + f.to_string());
    }
    for (int round = 0; round < 200; ++round) {
      const unsigned n = std::uniform_int_distribution<unsigned>(2, 12)(rng);
      const ClauseSet f = oracle::random_clause_set(rng, n, std::uniform_int_distribution<unsigned>(1, 12)(rng), 4);
      const ClauseSet g = oracle::random_clause_set(rng, n, 3, 3);
      Query q;
      q.k = whd(f);
      q.verify = true;
      const std::string label = " on " + f.to_string();
      q.kind = QueryKind::CO;
      v.expect(answer_query(f, q).value == oracle::satisfiable(f), "CO" + label);
      q.kind = QueryKind::VA;
      v.expect(answer_query(f, q).value == f.empty(), "VA" + label);
      for (const Clause& c : g) {
        q.kind = QueryKind::CE;
        q.clause = c;
        v.expect(answer_query(f, q).value == oracle::entails(f, c), "CE" + label);
        q.kind = QueryKind::IM;
        q.assignment = PartialAssignment(c.literals());
        const bool im = std::all_of(f.begin(), f.end(), [&](const Clause& d) {
          return std::any_of(d.begin(), d.end(), [&](Literal x) { return c.contains(x); });
        });
        v.expect(answer_query(f, q).value == im, "IM" + label);
      }
      q.other = g;
      q.kind = QueryKind::SE;
      const bool se = std::all_of(g.begin(), g.end(), [&](const Clause& c) { return oracle::entails(f, c); });
      v.expect(answer_query(f, q).value == se, "SE" + label);
      q.kind = QueryKind::EQ;
      v.expect(answer_query(f, q).value == oracle::equivalent(f, g), "EQ" + label);
      q.kind = QueryKind::ME;
      v.expect(answer_query(f, q).models == oracle::models(f), "ME" + label);
    }
  });

  all &= run(10, "k-base sanity", 0, [](Verdict& v) {
    for (unsigned h = 1; h <= 4; ++h) {
      const ClauseSet f = horn_chain(h).doped.doped;
      const PrimeSet p = prime_implicates(f);
      const KBase b = k_base(p, 1);
      v.expect(b.clauses == f, "F_" + str(h) + ": " + b.clauses.to_string());
      const KBase e = k_base_exhaustive(p, 1);
      v.expect(e.clauses.size() == f.size(), "F_" + str(h) + ": exhaustive size " + str(e.clauses.size()));
      expect_k_base(v, b, f, p.primes, 1, "F_" + str(h));
    }
    std::mt19937 rng(kSeed + 10);
    std::vector<ClauseSet> corpus{diffw2u2(), trigger_example(), extremal_doped(1, 2).doped.doped, g_n(3)};
    for (int i = 0; i < 40; ++i) corpus.push_back(oracle::random_clause_set(rng, 6, 7, 3));
    for (const ClauseSet& f : corpus) {
      const PrimeSet p = prime_implicates(f);
      for (unsigned k = 0; k <= 3; ++k) expect_k_base(v, k_base(p, k), f, p.primes, k, f.to_string());
    }
  });

  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
