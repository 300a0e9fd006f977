#include "kcw/primes.hpp"

#include <algorithm>
#include <array>

#include "kcw/errors.hpp"

namespace kcw {
namespace packed {

bool implies(const PSet& s, const PClause& c) { return !solve(assign_falsify(s, c)).sat; }

namespace {

// Kept clauses bucketed by their lowest literal, so that a subsumption query
// for R only scans the buckets of R's own literals.
class SubsumptionIndex {
 public:
  bool subsumed(const PClause& r) const {
    if (has_empty_) return true;
    for (std::uint64_t m = r.pos; m; m &= m - 1)
      if (any_subset(buckets_[2 * std::countr_zero(m)], r)) return true;
    for (std::uint64_t m = r.neg; m; m &= m - 1)
      if (any_subset(buckets_[2 * std::countr_zero(m) + 1], r)) return true;
    return false;
  }

  void add(const PClause& c) {
    if (c.empty()) {
      has_empty_ = true;
      return;
    }
    const int lp = c.pos ? std::countr_zero(c.pos) : 64;
    const int ln = c.neg ? std::countr_zero(c.neg) : 64;
    buckets_[lp <= ln ? 2 * lp : 2 * ln + 1].push_back(c);
  }

 private:
  static bool any_subset(const std::vector<PClause>& bucket, const PClause& r) {
    return std::any_of(bucket.begin(), bucket.end(), [&](const PClause& s) { return s.subset_of(r); });
  }

  std::array<std::vector<PClause>, 128> buckets_;
  bool has_empty_ = false;
};

bool by_size(const PClause& a, const PClause& b) {
  const int sa = a.size(), sb = b.size();
  return sa != sb ? sa < sb : a < b;
}

}  // namespace

PSet minimize(PSet s) {
  normalize(s);
  std::stable_sort(s.begin(), s.end(), by_size);
  SubsumptionIndex index;
  PSet out;
  for (const PClause& c : s) {
    if (index.subsumed(c)) continue;
    index.add(c);
    out.push_back(c);
  }
  normalize(out);
  return out;
}

PSet prime_implicates(const PSet& s, const Limits& limits) {
  if (has_empty(s)) return PSet{PClause{}};
  PSet cur = minimize(s);
  std::uint64_t vars = 0;
  for (const PClause& c : cur) vars |= c.vars();

  // Tison: one round of consensus per variable, in any fixed order, reaches
  // all prime implicates once combined with subsumption.
  for (std::uint64_t m = vars; m; m &= m - 1) {
    const std::uint64_t bit = m & -m;
    PSet pos, neg;
    for (const PClause& c : cur) {
      if (c.pos & bit) pos.push_back(c);
      if (c.neg & bit) neg.push_back(c);
    }
    if (pos.empty() || neg.empty()) continue;
    PSet resolvents;
    for (const PClause& p : pos) {
      for (const PClause& q : neg) {
        if (p.clash_mask(q) != bit) continue;
        resolvents.push_back({(p.pos | q.pos) & ~bit, (p.neg | q.neg) & ~bit});
        if (resolvents.size() > limits.closure_clauses) {
          throw CapExceeded("prime implicates: resolution closure exceeds " + std::to_string(limits.closure_clauses) +
                            " clauses");
        }
      }
    }
    resolvents.insert(resolvents.end(), cur.begin(), cur.end());
    cur = minimize(std::move(resolvents));
    if (cur.size() > limits.closure_clauses) {
      throw CapExceeded("prime implicates: resolution closure exceeds " + std::to_string(limits.closure_clauses) +
                        " clauses");
    }
    if (has_empty(cur)) return PSet{PClause{}};
  }
  if (cur.size() > limits.primes) {
    throw CapExceeded("prime implicates: " + std::to_string(cur.size()) + " primes exceed cap of " +
                      std::to_string(limits.primes));
  }
  return cur;
}

}  // namespace packed

namespace {

void check_vars(std::size_t n, const Limits& limits, const char* what) {
  if (n > limits.sat_vars) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(n) + " variables exceeds cap of " +
                      std::to_string(limits.sat_vars));
  }
}

}  // namespace

bool implies(const ClauseSet& f, const Clause& c, const Limits& limits) {
  check_vars(f.vars().size(), limits, "implies");
  if (f.has_empty_clause()) return true;
  auto index = packed::VarIndex::of(f);
  // Literals of C outside var(F) play no role in phi_C * F.
  std::vector<Literal> inside;
  for (Literal x : c)
    if (index.bit(x.var()) >= 0) inside.push_back(x);
  return packed::implies(index.pack(f), index.pack(Clause(std::move(inside))));
}

bool equivalent(const ClauseSet& f, const ClauseSet& g, const Limits& limits) {
  auto index = packed::VarIndex::of(f, g);
  check_vars(index.size(), limits, "equivalent");
  auto pf = index.pack(f);
  auto pg = index.pack(g);
  auto entails_all = [](const packed::PSet& a, const packed::PSet& b) {
    return std::all_of(b.begin(), b.end(), [&](const packed::PClause& c) { return packed::implies(a, c); });
  };
  return entails_all(pf, pg) && entails_all(pg, pf);
}

PrimeSet prime_implicates(const ClauseSet& f, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  return {index.unpack(packed::prime_implicates(index.pack(f), limits)), f.vars()};
}

PrimeSet prime_implicants(const ClauseSet& f, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  // Berge's incremental transversal construction, dropping candidates that
  // contain a complementary pair.
  packed::PSet partial{packed::PClause{}};
  for (const packed::PClause& d : index.pack(f)) {
    packed::PSet next;
    for (const packed::PClause& t : partial) {
      if ((t.pos & d.pos) || (t.neg & d.neg)) {
        next.push_back(t);
        continue;
      }
      for (std::uint64_t m = d.pos; m; m &= m - 1) {
        const std::uint64_t bit = m & -m;
        if (!(t.neg & bit)) next.push_back({t.pos | bit, t.neg});
      }
      for (std::uint64_t m = d.neg; m; m &= m - 1) {
        const std::uint64_t bit = m & -m;
        if (!(t.pos & bit)) next.push_back({t.pos, t.neg | bit});
      }
    }
    partial = packed::minimize(std::move(next));
    if (partial.size() > limits.primes) {
      throw CapExceeded("prime implicants exceed cap of " + std::to_string(limits.primes));
    }
  }
  return {index.unpack(partial), f.vars()};
}

ClauseSet essential_among(const ClauseSet& primes, const Limits& limits) {
  auto index = packed::VarIndex::of(primes);
  check_vars(index.size(), limits, "essential primes");
  auto s = index.pack(primes);
  std::vector<Clause> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    packed::PSet rest;
    rest.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) rest.push_back(s[j]);
    if (!packed::implies(rest, s[i])) out.push_back(index.unpack(s[i]));
  }
  return ClauseSet(std::move(out));
}

ClauseSet essential_primes(const ClauseSet& f, const Limits& limits) {
  return essential_among(prime_implicates(f, limits).primes, limits);
}

}  // namespace kcw
