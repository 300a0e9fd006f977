#include "kcw/propagation.hpp"

#include "kcw/errors.hpp"

namespace kcw {
namespace packed {

Reducer::Run Reducer::run(const PSet& s, unsigned k) {
  Run r;
  if (has_empty(s)) {
    r.refuted = true;
    r.reduced = PSet{PClause{}};
    return r;
  }
  if (k == 0) {
    r.reduced = s;
    return r;
  }
  if (k == 1) {
    UnitResult up = unit_propagate(s);
    r.refuted = up.conflict;
    r.reduced = std::move(up.reduced);
    r.assigned = up.assigned;
    r.values = up.values;
    return r;
  }
  r.reduced = s;
  for (;;) {
    std::uint64_t pos = 0, neg = 0;
    for (const PClause& c : r.reduced) {
      pos |= c.pos;
      neg |= c.neg;
    }
    // Literals not occurring in F are never failed: <x->0> * F is then a
    // subset of the clauses of F, which r_{k-1} cannot refute if it cannot
    // refute F itself (and if it can, some occurring literal also fails).
    bool applied = false;
    for (std::uint64_t m = pos | neg; m && !applied; m &= m - 1) {
      const int b = std::countr_zero(m);
      for (bool value : {true, false}) {
        if (!(((value ? pos : neg) >> b) & 1)) continue;
        if (refutes(assign(r.reduced, b, !value), k - 1)) {
          r.assigned |= 1ull << b;
          if (value) r.values |= 1ull << b;
          r.reduced = assign(r.reduced, b, value);
          applied = true;
          break;
        }
      }
    }
    if (!applied) return r;
    if (has_empty(r.reduced)) {
      r.refuted = true;
      r.reduced = PSet{PClause{}};
      return r;
    }
  }
}

bool Reducer::refutes(const PSet& s, unsigned k) {
  if (has_empty(s)) return true;
  if (k == 0 || s.empty()) return false;
  if (k == 1) return unit_propagate(s).conflict;
  if (memo_.size() <= k) memo_.resize(k + 1);
  if (auto it = memo_[k].find(s); it != memo_[k].end()) return it->second;
  bool result = refutes(s, k - 1) || run(s, k).refuted;
  memo_[k].emplace(s, result);
  return result;
}

std::optional<unsigned> Reducer::min_refuting_level(const PSet& s, unsigned max_k) {
  for (unsigned k = 0; k <= max_k; ++k)
    if (refutes(s, k)) return k;
  return std::nullopt;
}

std::size_t Reducer::memo_size() const {
  std::size_t n = 0;
  for (const auto& m : memo_) n += m.size();
  return n;
}

ForcedMasks forced(const PSet& s) {
  ForcedMasks out;
  SatResult model = solve(s);
  if (!model.sat) {
    out.unsat = true;
    return out;
  }
  std::uint64_t occurring = 0;
  for (const PClause& c : s) occurring |= c.vars();
  // Only the polarity a model chose can be forced; variables the model left
  // open are free in both directions.
  for (std::uint64_t m = occurring & model.assigned; m; m &= m - 1) {
    const int b = std::countr_zero(m);
    const bool value = (model.values >> b) & 1;
    if (!solve(assign(s, b, !value)).sat) {
      out.assigned |= 1ull << b;
      if (value) out.values |= 1ull << b;
    }
  }
  return out;
}

}  // namespace packed

namespace {

void check_sat_cap(const ClauseSet& f, const Limits& limits) {
  const std::size_t n = f.vars().size();
  if (n > limits.sat_vars) {
    throw CapExceeded("satisfiability oracle: " + std::to_string(n) + " variables exceeds cap of " +
                      std::to_string(limits.sat_vars));
  }
}

PropagationResult refuted_result(PartialAssignment assigned = {}) {
  return {ClauseSet{{}}, std::move(assigned), true};
}

}  // namespace

PropagationResult r_k(const ClauseSet& f, unsigned k) {
  if (f.has_empty_clause()) return refuted_result();
  auto index = packed::VarIndex::of(f);
  packed::Reducer reducer;
  auto run = reducer.run(index.pack(f), k);
  auto assigned = index.unpack_assignment(run.assigned, run.values);
  if (run.refuted) return refuted_result(std::move(assigned));
  return {index.unpack(run.reduced), std::move(assigned), false};
}

PropagationResult r_inf(const ClauseSet& f, const Limits& limits) {
  if (f.has_empty_clause()) return refuted_result();
  check_sat_cap(f, limits);
  auto index = packed::VarIndex::of(f);
  auto s = index.pack(f);
  auto fm = packed::forced(s);
  if (fm.unsat) return refuted_result();
  return {index.unpack(packed::assign_masks(s, fm.assigned, fm.values)),
          index.unpack_assignment(fm.assigned, fm.values), false};
}

ForcedLiterals forced_literals(const ClauseSet& f, const Limits& limits) {
  ForcedLiterals out;
  if (f.has_empty_clause()) {
    out.all = true;
    return out;
  }
  check_sat_cap(f, limits);
  auto index = packed::VarIndex::of(f);
  auto fm = packed::forced(index.pack(f));
  if (fm.unsat) {
    out.all = true;
    return out;
  }
  out.literals = index.unpack_assignment(fm.assigned, fm.values).true_literals();
  return out;
}

SatAnswer sat_oracle(const ClauseSet& f, const Limits& limits) {
  if (f.has_empty_clause()) return {};
  check_sat_cap(f, limits);
  auto index = packed::VarIndex::of(f);
  auto r = packed::solve(index.pack(f));
  if (!r.sat) return {};
  // Variables the search left open are set to 0 to make the model total.
  return {true, index.unpack_assignment(index.all(), r.values & r.assigned)};
}

}  // namespace kcw
