#include "kcw/compile.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "kcw/errors.hpp"
#include "kcw/hardness.hpp"
#include "kcw/packed.hpp"
#include "kcw/propagation.hpp"

namespace kcw {
namespace {

using packed::PClause;
using packed::PSet;

bool shorter(const Clause& a, const Clause& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

}  // namespace

KBase k_base(const PrimeSet& primes, unsigned k, const Limits& limits) {
  const ClauseSet& p = primes.primes;
  KBase out;
  out.level = k;
  out.seed = essential_among(p, limits);
  out.seed_too_hard = equivalent(out.seed, p, limits) && !hd_at_most(out.seed, p, k, limits);

  auto index = packed::VarIndex::of(p);
  std::vector<Clause> order(p.begin(), p.end());
  std::sort(order.begin(), order.end(), shorter);

  std::vector<Clause> current(out.seed.begin(), out.seed.end());
  packed::Reducer reducer;
  for (const Clause& c : order) {
    if (out.seed.contains(c)) continue;
    const PSet s = index.pack(ClauseSet(current));
    if (reducer.refutes(packed::assign_falsify(s, index.pack(c)), k)) continue;
    current.push_back(c);
    out.added.push_back(c);
  }

  std::vector<Clause> descending = current;
  std::sort(descending.begin(), descending.end(), [](const Clause& a, const Clause& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  for (const Clause& c : descending) {
    if (out.seed.contains(c)) continue;
    std::vector<Clause> trial;
    for (const Clause& d : current)
      if (!(d == c)) trial.push_back(d);
    if (hd_at_most(ClauseSet(trial), p, k, limits)) {
      current = std::move(trial);
      out.removed.push_back(c);
    }
  }
  out.clauses = ClauseSet(std::move(current));
  out.minimal = true;
  return out;
}

KBase k_base_exhaustive(const PrimeSet& primes, unsigned k, const Limits& limits) {
  const ClauseSet& p = primes.primes;
  KBase out;
  out.level = k;
  out.seed = essential_among(p, limits);
  out.seed_too_hard = equivalent(out.seed, p, limits) && !hd_at_most(out.seed, p, k, limits);
  std::vector<std::size_t> optional;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!out.seed.contains(p[i])) optional.push_back(i);
  std::uint64_t examined = 0;
  const std::size_t free = optional.size();
  for (std::size_t r = 0; r <= free; ++r) {
    std::vector<std::size_t> c(r);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
      if (++examined > limits.equiv_subsets) {
        throw CapExceeded("exhaustive k-base: more than " + std::to_string(limits.equiv_subsets) + " candidate subsets");
      }
      std::vector<Clause> cand(out.seed.begin(), out.seed.end());
      for (std::size_t j : c) cand.push_back(p[optional[j]]);
      ClauseSet s(std::move(cand));
      if (hd_at_most(s, p, k, limits)) {
        for (std::size_t j : c) out.added.push_back(p[optional[j]]);
        out.clauses = std::move(s);
        out.minimal = true;
        return out;
      }
      std::size_t i = r;
      while (i > 0 && c[i - 1] == free - r + (i - 1)) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
    }
  }
  throw IntegrityError("the full prime set should always be a k-base");
}

CanonPrimes canon_primes(const ClauseSet& f, std::size_t max_subset, const Limits& limits) {
  if (max_subset == 0) throw DomainError("canon_primes: subset bound must be positive");
  if (f.size() > 64) throw CapExceeded("canon_primes: more than 64 clauses");
  auto index = packed::VarIndex::of(f);
  PSet all;
  for (const Clause& c : f) all.push_back(index.pack(c));
  const std::size_t n = all.size();
  const std::size_t top = std::min(max_subset, n);

  PSet found;
  std::uint64_t examined = 0;
  for (std::size_t r = 1; r <= top; ++r) {
    std::vector<std::size_t> c(r);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
      if (++examined > limits.closure_clauses) {
        throw CapExceeded("canon_primes: more than " + std::to_string(limits.closure_clauses) + " subsets");
      }
      PSet sub;
      std::uint64_t pos = 0, neg = 0;
      for (std::size_t j : c) {
        sub.push_back(all[j]);
        pos |= all[j].pos;
        neg |= all[j].neg;
      }
      const PClause pure{pos & ~neg, neg & ~pos};
      if (packed::implies(sub, pure)) found.push_back(pure);
      std::size_t i = r;
      while (i > 0 && c[i - 1] == n - r + (i - 1)) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
    }
  }
  found = packed::minimize(std::move(found));

  CanonPrimes out;
  out.clauses = index.unpack(found);
  auto subsumed = [&](const PClause& c) {
    return std::any_of(found.begin(), found.end(), [&](const PClause& d) { return d.subset_of(c); });
  };
  for (const PClause& c : all) {
    if (!subsumed(c)) {
      out.diagnostic = "clause " + index.unpack(c).to_string() + " of F is not subsumed by the result";
      return out;
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      const std::uint64_t clash = found[i].clash_mask(found[j]);
      if (std::popcount(clash) != 1) continue;
      const PClause r{(found[i].pos | found[j].pos) & ~clash, (found[i].neg | found[j].neg) & ~clash};
      if (!subsumed(r)) {
        out.diagnostic = "resolvent " + index.unpack(r).to_string() +
                         " is not subsumed: some prime implicate needs a premise set larger than " +
                         std::to_string(max_subset);
        return out;
      }
    }
  }
  out.certified = true;
  return out;
}

namespace {

class QueryEngine {
 public:
  QueryEngine(const ClauseSet& f, const Query& q, const Limits& limits)
      : f_(f), q_(q), limits_(limits), index_(packed::VarIndex::of(f)), s_(index_.pack(f)) {}

  // k-resolution decides unsatisfiability of phi * F; `what` names the query
  // for error reports.
  bool refuted(const PSet& g, const std::string& what) const {
    const bool r = packed::k_refutes(g, q_.k, limits_);
    if (q_.verify && !r && !packed::solve(g).sat) {
      throw IntegrityError(what + ": unsatisfiable but not refuted by " + std::to_string(q_.k) +
                           "-resolution, so F is not in WC_" + std::to_string(q_.k));
    }
    return r;
  }

  bool entails(const Clause& c, const std::string& what) const {
    std::vector<Literal> inside;
    for (Literal x : c)
      if (index_.bit(x.var()) >= 0) inside.push_back(x);
    return refuted(packed::assign_falsify(s_, index_.pack(Clause(std::move(inside)))), what);
  }

  void enumerate(std::uint64_t assigned, std::uint64_t values, int bit, QueryAnswer& out, bool keep) const {
    const PSet g = packed::assign_masks(s_, assigned, values);
    if (refuted(g, "ME branch " + index_.unpack_assignment(assigned, values).to_string())) return;
    if (bit == static_cast<int>(index_.size())) {
      if (++out.count > limits_.models) {
        throw CapExceeded("model enumeration: more than " + std::to_string(limits_.models) + " models");
      }
      if (keep) out.models.push_back(index_.unpack_assignment(assigned, values));
      return;
    }
    const std::uint64_t m = 1ull << bit;
    enumerate(assigned | m, values, bit + 1, out, keep);
    enumerate(assigned | m, values | m, bit + 1, out, keep);
  }

  QueryAnswer run() const {
    QueryAnswer out;
    switch (q_.kind) {
      case QueryKind::CO:
        out.value = !refuted(s_, "CO");
        break;
      case QueryKind::CE:
        if (!q_.clause) throw DomainError("CE needs a clause");
        out.value = entails(*q_.clause, "CE " + q_.clause->to_string());
        break;
      case QueryKind::VA:
        out.value = f_.empty();
        break;
      case QueryKind::IM:
        if (!q_.assignment) throw DomainError("IM needs a partial assignment");
        out.value = apply(*q_.assignment, f_).empty();
        break;
      case QueryKind::SE:
        if (!q_.other) throw DomainError("SE needs a second clause-set");
        out.value = std::all_of(q_.other->begin(), q_.other->end(),
                                [&](const Clause& c) { return entails(c, "SE clause " + c.to_string()); });
        break;
      case QueryKind::EQ: {
        if (!q_.other) throw DomainError("EQ needs a second clause-set");
        Query back = q_;
        back.kind = QueryKind::SE;
        back.other = f_;
        const bool forward = std::all_of(q_.other->begin(), q_.other->end(),
                                         [&](const Clause& c) { return entails(c, "EQ clause " + c.to_string()); });
        out.value = forward && QueryEngine(*q_.other, back, limits_).run().value;
        break;
      }
      case QueryKind::ME:
      case QueryKind::MC:
        if (f_.has_empty_clause()) break;
        enumerate(0, 0, 0, out, q_.kind == QueryKind::ME);
        out.value = out.count > 0;
        break;
    }
    return out;
  }

 private:
  const ClauseSet& f_;
  const Query& q_;
  const Limits& limits_;
  packed::VarIndex index_;
  PSet s_;
};

}  // namespace

QueryAnswer answer_query(const ClauseSet& f, const Query& q, const Limits& limits) {
  return QueryEngine(f, q, limits).run();
}

std::string to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::CO: return "CO";
    case QueryKind::CE: return "CE";
    case QueryKind::VA: return "VA";
    case QueryKind::IM: return "IM";
    case QueryKind::SE: return "SE";
    case QueryKind::EQ: return "EQ";
    case QueryKind::ME: return "ME";
    case QueryKind::MC: return "MC";
  }
  return "?";
}

std::optional<QueryKind> parse_query_kind(std::string_view name) {
  for (QueryKind k : {QueryKind::CO, QueryKind::CE, QueryKind::VA, QueryKind::IM, QueryKind::SE, QueryKind::EQ,
                      QueryKind::ME, QueryKind::MC}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

}  // namespace kcw
