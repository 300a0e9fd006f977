#pragma once

// Knowledge compilation on top of the hardness hierarchy: k-bases built from
// prime implicates, prime computation by enumerating small premise sets, and
// the standard query suite answered with k-resolution.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"
#include "kcw/primes.hpp"

namespace kcw {

struct KBase {
  ClauseSet clauses;
  unsigned level = 0;
  // No clause can be removed without losing equivalence or hd <= level.
  bool minimal = false;
  // Provenance: the essential primes the construction starts from, the
  // primes added in phase 1 and removed in phase 2, in processing order.
  ClauseSet seed;
  std::vector<Clause> added;
  std::vector<Clause> removed;
  // The essential primes alone were equivalent to the source but had
  // hardness above the level, so phase 1 had to keep adding.
  bool seed_too_hard = false;
};

// Phase 1 adds, in ascending (size, canonical) order, each prime C for which
// r_k(phi_C * current) is not yet a refutation; phase 2 drops, in descending
// size order, every clause whose removal keeps all primes r_k-refutable.
KBase k_base(const PrimeSet& primes, unsigned k, const Limits& limits = {});
// Exhaustive: a smallest superset of the essential primes, within the primes,
// with hd <= k. CapExceeded after limits.equiv_subsets candidates.
KBase k_base_exhaustive(const PrimeSet& primes, unsigned k, const Limits& limits = {});

struct CanonPrimes {
  ClauseSet clauses;
  // The result is closed under resolution modulo subsumption and subsumes
  // every clause of F, which certifies that it is exactly primec_0(F).
  bool certified = false;
  std::string diagnostic;
};

// purec(F') for every F' ⊆ F with 1 <= c(F') <= K and F' |= purec(F'),
// subsumption-eliminated.
CanonPrimes canon_primes(const ClauseSet& f, std::size_t max_subset, const Limits& limits = {});

enum class QueryKind { CO, CE, VA, IM, SE, EQ, ME, MC };

struct Query {
  QueryKind kind = QueryKind::CO;
  unsigned k = 0;
  std::optional<Clause> clause;                // CE
  std::optional<PartialAssignment> assignment;  // IM
  std::optional<ClauseSet> other;              // SE, EQ
  // Cross-check every k-resolution decision with the satisfiability oracle
  // and throw IntegrityError when F turns out not to be in WC_k.
  bool verify = false;
};

struct QueryAnswer {
  bool value = false;
  // ME: total assignments over var(F), in lexicographic order with 0 before 1
  // on ascending variables.
  std::vector<PartialAssignment> models;
  std::uint64_t count = 0;
};

QueryAnswer answer_query(const ClauseSet& f, const Query& q, const Limits& limits = {});

std::string to_string(QueryKind kind);
std::optional<QueryKind> parse_query_kind(std::string_view name);

}  // namespace kcw
