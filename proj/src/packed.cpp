#include "kcw/packed.hpp"

#include <algorithm>
#include <array>

#include "kcw/errors.hpp"

namespace kcw::packed {

void normalize(PSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool has_empty(const PSet& s) {
  return std::any_of(s.begin(), s.end(), [](const PClause& c) { return c.empty(); });
}

VarIndex::VarIndex(std::vector<Var> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  if (vars_.size() > 64) {
    throw CapExceeded("bitmask engine supports at most 64 variables, got " + std::to_string(vars_.size()));
  }
}

VarIndex VarIndex::of(const ClauseSet& f) { return VarIndex(f.vars()); }

VarIndex VarIndex::of(const ClauseSet& f, const ClauseSet& g) {
  auto vs = f.vars();
  auto ws = g.vars();
  vs.insert(vs.end(), ws.begin(), ws.end());
  return VarIndex(std::move(vs));
}

int VarIndex::bit(Var v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return -1;
  return static_cast<int>(it - vars_.begin());
}

PClause VarIndex::pack(const Clause& c) const {
  PClause p;
  for (Literal x : c) {
    int b = bit(x.var());
    if (b < 0) throw DomainError("variable " + std::to_string(x.var()) + " not indexed");
    (x.positive() ? p.pos : p.neg) |= 1ull << b;
  }
  return p;
}

PSet VarIndex::pack(const ClauseSet& f) const {
  PSet s;
  s.reserve(f.size());
  for (const Clause& c : f) s.push_back(pack(c));
  normalize(s);
  return s;
}

Clause VarIndex::unpack(const PClause& c) const {
  std::vector<Literal> lits;
  lits.reserve(static_cast<std::size_t>(c.size()));
  for (std::uint64_t m = c.vars(); m; m &= m - 1) {
    int b = std::countr_zero(m);
    lits.emplace_back((c.pos >> b) & 1 ? vars_[b] : -vars_[b]);
  }
  return Clause(std::move(lits));
}

ClauseSet VarIndex::unpack(const PSet& s) const {
  std::vector<Clause> cs;
  cs.reserve(s.size());
  for (const PClause& c : s) cs.push_back(unpack(c));
  return ClauseSet(std::move(cs));
}

PartialAssignment VarIndex::unpack_assignment(std::uint64_t assigned, std::uint64_t values) const {
  PartialAssignment phi;
  for (std::uint64_t m = assigned; m; m &= m - 1) {
    int b = std::countr_zero(m);
    phi.set_true(Literal((values >> b) & 1 ? vars_[b] : -vars_[b]));
  }
  return phi;
}

PSet assign_masks(const PSet& s, std::uint64_t assigned, std::uint64_t values) {
  const std::uint64_t t = assigned & values;
  const std::uint64_t f = assigned & ~values;
  PSet out;
  out.reserve(s.size());
  for (const PClause& c : s) {
    if ((c.pos & t) || (c.neg & f)) continue;
    out.push_back({c.pos & ~assigned, c.neg & ~assigned});
  }
  normalize(out);
  return out;
}

PSet assign(const PSet& s, int bit, bool value) {
  const std::uint64_t m = 1ull << bit;
  return assign_masks(s, m, value ? m : 0);
}

PSet assign_falsify(const PSet& s, const PClause& c) { return assign_masks(s, c.vars(), c.neg); }

UnitResult unit_propagate(const PSet& s) {
  UnitResult r;
  r.reduced = s;
  for (;;) {
    if (has_empty(r.reduced)) {
      r.conflict = true;
      r.reduced = PSet{PClause{}};
      return r;
    }
    auto unit = std::find_if(r.reduced.begin(), r.reduced.end(), [](const PClause& c) { return c.size() == 1; });
    if (unit == r.reduced.end()) return r;
    const std::uint64_t m = unit->vars();
    const bool value = unit->pos != 0;
    r.assigned |= m;
    if (value) r.values |= m;
    r.reduced = assign_masks(r.reduced, m, value ? m : 0);
  }
}

namespace {

bool dpll(const PSet& s, std::uint64_t& assigned, std::uint64_t& values) {
  UnitResult up = unit_propagate(s);
  if (up.conflict) return false;
  std::uint64_t a = assigned | up.assigned;
  std::uint64_t v = values | up.values;
  if (up.reduced.empty()) {
    assigned = a;
    values = v;
    return true;
  }
  // Branch on the most frequent variable; lowest bit breaks ties.
  std::array<int, 64> count{};
  for (const PClause& c : up.reduced)
    for (std::uint64_t m = c.vars(); m; m &= m - 1) ++count[static_cast<std::size_t>(std::countr_zero(m))];
  int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  for (bool value : {false, true}) {
    std::uint64_t a2 = a | (1ull << best);
    std::uint64_t v2 = value ? (v | (1ull << best)) : v;
    if (dpll(assign(up.reduced, best, value), a2, v2)) {
      assigned = a2;
      values = v2;
      return true;
    }
  }
  return false;
}

}  // namespace

SatResult solve(const PSet& s) {
  SatResult r;
  r.sat = dpll(s, r.assigned, r.values);
  if (!r.sat) r.assigned = r.values = 0;
  return r;
}

std::size_t PSetHash::operator()(const PSet& s) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.size();
  for (const PClause& c : s) {
    h ^= c.pos + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= c.neg * 0xff51afd7ed558ccdull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace kcw::packed
