#pragma once

// Prime implicates and implicants, essential primes, entailment and
// equivalence.

#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"
#include "kcw/packed.hpp"

namespace kcw {

struct PrimeSet {
  ClauseSet primes;
  std::vector<Var> source_vars;
};

// F |= C, i.e. phi_C * F is unsatisfiable.
bool implies(const ClauseSet& f, const Clause& c, const Limits& limits = {});
// Mutual entailment of all clauses.
bool equivalent(const ClauseSet& f, const ClauseSet& g, const Limits& limits = {});

// Tison-style resolution closure followed by subsumption elimination.
PrimeSet prime_implicates(const ClauseSet& f, const Limits& limits = {});
// Minimal non-clashing hitting sets of the clauses of F (read as terms).
PrimeSet prime_implicants(const ClauseSet& f, const Limits& limits = {});
ClauseSet essential_primes(const ClauseSet& f, const Limits& limits = {});
// Essential elements of an already computed prime set.
ClauseSet essential_among(const ClauseSet& primes, const Limits& limits = {});

namespace packed {

bool implies(const PSet& s, const PClause& c);
// Removes every clause that has a strict subset (or duplicate) in `s`.
PSet minimize(PSet s);
// Prime implicates; throws CapExceeded past limits.closure_clauses live
// clauses or limits.primes results.
PSet prime_implicates(const PSet& s, const Limits& limits = {});

}  // namespace packed
}  // namespace kcw
