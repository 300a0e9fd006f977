#include "kcw/mpsdope.hpp"

#include <algorithm>

#include "kcw/errors.hpp"
#include "kcw/packed.hpp"
#include "kcw/primes.hpp"

namespace kcw {
namespace {

using packed::PClause;
using packed::PSet;

void check_vars(const packed::VarIndex& index, const Limits& limits, const char* what) {
  if (index.size() > limits.sat_vars) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(index.size()) + " variables exceeds cap of " +
                      std::to_string(limits.sat_vars));
  }
}

PClause pure_of(const PSet& s) {
  std::uint64_t pos = 0, neg = 0;
  for (const PClause& c : s) {
    pos |= c.pos;
    neg |= c.neg;
  }
  return {pos & ~neg, neg & ~pos};
}

bool minimally_unsat(const PSet& s) {
  if (packed::solve(s).sat) return false;
  PSet rest;
  for (std::size_t i = 0; i < s.size(); ++i) {
    rest.assign(s.begin(), s.end());
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!packed::solve(rest).sat) return false;
  }
  return true;
}

// MU plus: no clause can be extended by a literal over var(s) while keeping
// unsatisfiability.
bool saturated_mu(const PSet& s) {
  if (!minimally_unsat(s)) return false;
  std::uint64_t vars = 0;
  for (const PClause& c : s) vars |= c.vars();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::uint64_t m = vars & ~s[i].vars(); m; m &= m - 1) {
      const std::uint64_t bit = m & -m;
      for (bool positive : {true, false}) {
        PSet t = s;
        if (positive) {
          t[i].pos |= bit;
        } else {
          t[i].neg |= bit;
        }
        packed::normalize(t);
        if (!packed::solve(t).sat) return false;
      }
    }
  }
  return true;
}

int var_count(const PSet& s) {
  std::uint64_t vars = 0;
  for (const PClause& c : s) vars |= c.vars();
  return std::popcount(vars);
}

// Images of the clauses under phi_purec, or nullopt when two clauses collapse.
std::optional<PSet> pure_images(const PSet& s, const PClause& pure) {
  PSet images;
  images.reserve(s.size());
  for (const PClause& c : s) images.push_back({c.pos & ~pure.pos, c.neg & ~pure.neg});
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return std::nullopt;
  return images;
}

bool packed_is_mps(const PSet& s, PClause& pure) {
  pure = pure_of(s);
  if (s.empty()) return false;
  auto images = pure_images(s, pure);
  return images && minimally_unsat(*images);
}

}  // namespace

Clause pure_clause(const ClauseSet& f) {
  auto index = packed::VarIndex::of(f);
  return index.unpack(pure_of(index.pack(f)));
}

MuFlags classify_mu(const ClauseSet& f, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  check_vars(index, limits, "classify_mu");
  const PSet s = index.pack(f);
  MuFlags flags;
  flags.mu = minimally_unsat(s);
  flags.smu = flags.mu && saturated_mu(s);
  flags.smu_delta1 = flags.smu && static_cast<long>(s.size()) - var_count(s) == 1;
  return flags;
}

MpsCheck is_mps(const ClauseSet& f, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  check_vars(index, limits, "is_mps");
  PClause pure;
  const bool ok = packed_is_mps(index.pack(f), pure);
  return {ok, index.unpack(pure)};
}

MpsFamily mps_enumerate(const ClauseSet& f, const Limits& limits) {
  if (f.size() > limits.mps_clauses) {
    throw CapExceeded("mps enumeration: " + std::to_string(f.size()) + " clauses exceeds cap of " +
                      std::to_string(limits.mps_clauses));
  }
  auto index = packed::VarIndex::of(f);
  check_vars(index, limits, "mps enumeration");
  PSet all;
  for (const Clause& c : f) all.push_back(index.pack(c));  // canonical order kept

  MpsFamily family{f, {}};
  const std::uint64_t subsets = 1ull << f.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    PSet sub;
    std::vector<std::size_t> indices;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(m));
      sub.push_back(all[i]);
      indices.push_back(i);
    }
    PClause pure;
    if (packed_is_mps(sub, pure)) family.members.push_back({std::move(indices), index.unpack(pure)});
  }
  std::sort(family.members.begin(), family.members.end());
  return family;
}

Var DopedClauseSet::doping_var(const Clause& base_clause) const {
  auto i = base.index_of(base_clause);
  if (!i) throw DomainError("clause " + base_clause.to_string() + " is not in the base clause-set");
  return doping_vars[*i];
}

Clause DopedClauseSet::doped_clause(std::size_t base_index) const {
  std::vector<Literal> lits = base[base_index].literals();
  lits.emplace_back(doping_vars[base_index]);
  return Clause(std::move(lits));
}

DopedClauseSet dope(const ClauseSet& f) {
  DopedClauseSet d;
  d.base = f;
  const Var top = f.max_var();
  std::vector<Clause> doped;
  for (std::size_t i = 0; i < f.size(); ++i) {
    d.doping_vars.push_back(top + static_cast<Var>(i) + 1);
    doped.push_back(d.doped_clause(i));
  }
  d.doped = ClauseSet(std::move(doped));
  return d;
}

MpsFamily mps_via_doping(const ClauseSet& f, const Limits& limits) {
  const DopedClauseSet d = dope(f);
  const ClauseSet primes = prime_implicates(d.doped, limits).primes;
  MpsFamily family{f, {}};
  for (const Clause& c : primes) {
    MpsMember member;
    std::vector<Clause> clauses;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (c.contains_var(d.doping_vars[i])) {
        member.indices.push_back(i);
        clauses.push_back(f[i]);
      }
    }
    member.pure = pure_clause(ClauseSet(std::move(clauses)));
    family.members.push_back(std::move(member));
  }
  std::sort(family.members.begin(), family.members.end());
  return family;
}

bool is_total_mps(const ClauseSet& f, const Limits& limits) {
  if (f.empty()) return false;
  auto index = packed::VarIndex::of(f);
  check_vars(index, limits, "is_total_mps");
  const PSet s = index.pack(f);
  auto images = pure_images(s, pure_of(s));
  if (!images || !saturated_mu(*images)) return false;
  return static_cast<long>(images->size()) - var_count(*images) == 1;
}

bool has_max_primes(const ClauseSet& f, const Limits& limits) {
  if (!is_total_mps(f, limits)) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<Var> others;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j == i) continue;
      auto vs = f[j].vars();
      others.insert(others.end(), vs.begin(), vs.end());
    }
    std::sort(others.begin(), others.end());
    const bool owns = std::any_of(f[i].begin(), f[i].end(), [&](Literal x) {
      return !std::binary_search(others.begin(), others.end(), x.var());
    });
    if (!owns) return false;
  }
  return true;
}

}  // namespace kcw
