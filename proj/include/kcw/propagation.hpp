#pragma once

// Generalised unit-clause propagation r_k, forced literals, and the
// exhaustive satisfiability oracle.

#include <optional>
#include <unordered_map>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"
#include "kcw/packed.hpp"

namespace kcw {

struct PropagationResult {
  ClauseSet reduced;
  PartialAssignment assigned;
  bool refuted = false;
};

// r_0(F) = {⊥} if ⊥ ∈ F, else F. For k >= 1, while some literal x has
// r_{k-1}(<x->0> * F) = {⊥}, apply <x->1>. Literals are scanned by ascending
// variable, positive first.
PropagationResult r_k(const ClauseSet& f, unsigned k);
// Applies every forced assignment (decided by the SAT oracle).
PropagationResult r_inf(const ClauseSet& f, const Limits& limits = {});

struct ForcedLiterals {
  // Set for unsatisfiable input: every literal is forced.
  bool all = false;
  std::vector<Literal> literals;
};
ForcedLiterals forced_literals(const ClauseSet& f, const Limits& limits = {});

struct SatAnswer {
  bool sat = false;
  std::optional<PartialAssignment> model;
};
// Throws CapExceeded when n(F) > limits.sat_vars.
SatAnswer sat_oracle(const ClauseSet& f, const Limits& limits = {});

namespace packed {

// r_k on bitmask clause-sets with a memo table keyed by (clause-set, level).
// One instance may be reused across calls; entries stay valid forever.
class Reducer {
 public:
  struct Run {
    PSet reduced;
    bool refuted = false;
    std::uint64_t assigned = 0;
    std::uint64_t values = 0;
  };

  Run run(const PSet& s, unsigned k);
  bool refutes(const PSet& s, unsigned k);
  // Smallest k <= max_k with r_k refuting s; nullopt if none.
  std::optional<unsigned> min_refuting_level(const PSet& s, unsigned max_k);
  std::size_t memo_size() const;
  void clear() { memo_.clear(); }

 private:
  std::vector<std::unordered_map<PSet, bool, PSetHash>> memo_;
};

struct ForcedMasks {
  bool unsat = false;
  std::uint64_t assigned = 0;
  std::uint64_t values = 0;
};
ForcedMasks forced(const PSet& s);

}  // namespace packed
}  // namespace kcw
