#pragma once

// Pure clauses, minimal premise sets (mps), MU / SMU recognition and the
// doping transformation D(F).

#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"

namespace kcw {

// The literals of F whose complement does not occur in F.
Clause pure_clause(const ClauseSet& f);

struct MuFlags {
  bool mu = false;
  bool smu = false;
  bool smu_delta1 = false;
};
MuFlags classify_mu(const ClauseSet& f, const Limits& limits = {});

struct MpsCheck {
  bool is_mps = false;
  // purec(F): the unique clause F minimally entails when F is an mps.
  Clause pure;
};
// F is an mps iff setting its pure literals to false keeps its clauses
// distinct and leaves a minimally unsatisfiable clause-set.
MpsCheck is_mps(const ClauseSet& f, const Limits& limits = {});

struct MpsMember {
  // Positions in the canonical clause order of the base clause-set.
  std::vector<std::size_t> indices;
  Clause pure;

  bool operator==(const MpsMember&) const = default;
  auto operator<=>(const MpsMember&) const = default;
};

struct MpsFamily {
  ClauseSet base;
  // Sorted by index list.
  std::vector<MpsMember> members;

  bool operator==(const MpsFamily&) const = default;
};

// All non-empty sub-clause-sets that are mps's; CapExceeded above
// limits.mps_clauses clauses.
MpsFamily mps_enumerate(const ClauseSet& f, const Limits& limits = {});

struct DopedClauseSet {
  ClauseSet base;
  ClauseSet doped;
  // doping_vars[i] belongs to base[i]: max_var(base) + i + 1.
  std::vector<Var> doping_vars;

  Var doping_var(const Clause& base_clause) const;
  Clause doped_clause(std::size_t base_index) const;
};

DopedClauseSet dope(const ClauseSet& f);

// The same family obtained through the prime implicates of D(F): each prime
// C yields the member {D in F : u_D in var(C)}.
MpsFamily mps_via_doping(const ClauseSet& f, const Limits& limits = {});

bool is_total_mps(const ClauseSet& f, const Limits& limits = {});
// |primec_0(F)| = 2^c(F) - 1: F is a total mps and each clause owns a
// variable occurring in no other clause.
bool has_max_primes(const ClauseSet& f, const Limits& limits = {});

}  // namespace kcw
