#pragma once

// Bitmask clause representation over at most 64 variables. The semantic
// procedures (SAT oracle, r_k, resolution closures, prime implicates) run on
// this form; bit i stands for the i-th smallest variable of the source
// clause-set, so bit order agrees with canonical literal order.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "kcw/core.hpp"

namespace kcw::packed {

struct PClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  std::uint64_t vars() const { return pos | neg; }
  int size() const { return std::popcount(pos) + std::popcount(neg); }
  bool empty() const { return (pos | neg) == 0; }
  bool subset_of(const PClause& o) const { return (pos & ~o.pos) == 0 && (neg & ~o.neg) == 0; }
  // Literals of this clause whose complement lies in `o`, as a variable mask.
  std::uint64_t clash_mask(const PClause& o) const { return (pos & o.neg) | (neg & o.pos); }

  bool operator==(const PClause&) const = default;
  auto operator<=>(const PClause&) const = default;
};

using PSet = std::vector<PClause>;

// Sort, remove duplicates.
void normalize(PSet& s);
bool has_empty(const PSet& s);

// Bijection between the variables of a clause-set and bit positions.
class VarIndex {
 public:
  VarIndex() = default;
  // Throws CapExceeded above 64 variables.
  explicit VarIndex(std::vector<Var> vars);
  static VarIndex of(const ClauseSet& f);
  static VarIndex of(const ClauseSet& f, const ClauseSet& g);

  std::size_t size() const { return vars_.size(); }
  Var var(int bit) const { return vars_[static_cast<std::size_t>(bit)]; }
  // -1 when absent.
  int bit(Var v) const;
  std::uint64_t all() const { return vars_.size() == 64 ? ~0ull : ((1ull << vars_.size()) - 1); }

  PClause pack(const Clause& c) const;
  PSet pack(const ClauseSet& f) const;
  Clause unpack(const PClause& c) const;
  ClauseSet unpack(const PSet& s) const;
  PartialAssignment unpack_assignment(std::uint64_t assigned, std::uint64_t values) const;

 private:
  std::vector<Var> vars_;
};

// Make literal (bit, value) true: drop satisfied clauses, shrink the rest.
// Result is normalized.
PSet assign(const PSet& s, int bit, bool value);
// phi_C * F for packed C.
PSet assign_falsify(const PSet& s, const PClause& c);
// General instantiation by masks (assigned variables, their values).
PSet assign_masks(const PSet& s, std::uint64_t assigned, std::uint64_t values);

struct UnitResult {
  bool conflict = false;
  std::uint64_t assigned = 0;
  std::uint64_t values = 0;
  PSet reduced;
};
// Plain unit-clause propagation to fixpoint.
UnitResult unit_propagate(const PSet& s);

struct SatResult {
  bool sat = false;
  std::uint64_t assigned = 0;  // variables bound by the model
  std::uint64_t values = 0;
};
// DPLL with unit propagation over the variables occurring in `s`.
SatResult solve(const PSet& s);

struct PSetHash {
  std::size_t operator()(const PSet& s) const;
};

}  // namespace kcw::packed
