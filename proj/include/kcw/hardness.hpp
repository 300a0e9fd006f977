#pragma once

// Hardness measures: hd (r_k based), phd (propagation completeness), whd
// (k-resolution), symmetric resolution width, and the size lower bound that
// follows from whd.

#include <optional>
#include <string>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"
#include "kcw/packed.hpp"

namespace kcw {

struct ResolutionStep {
  Clause clause;
  // Indices of the parents within the trace; absent for input clauses.
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
};

struct KResolution {
  bool refuted = false;
  // When refuted: a derivation ending in the empty clause.
  std::vector<ResolutionStep> trace;
};

// Saturates F under resolution steps in which at least one parent has length
// at most k; subsumed clauses are discarded along the way.
KResolution k_res_refutes(const ClauseSet& f, unsigned k, const Limits& limits = {});

// A measure value together with what attains it: for satisfiable input the
// prime implicate C whose phi_C * F is hardest, for phd the assignment.
struct Measured {
  unsigned value = 0;
  std::optional<Clause> prime;
  std::optional<PartialAssignment> assignment;
};

Measured hd_measured(const ClauseSet& f, const Limits& limits = {});
// Same, with the prime implicates of F supplied by the caller.
Measured hd_measured(const ClauseSet& f, const ClauseSet& primes, const Limits& limits = {});
unsigned hd(const ClauseSet& f, const Limits& limits = {});

Measured whd_measured(const ClauseSet& f, const Limits& limits = {});
Measured whd_measured(const ClauseSet& f, const ClauseSet& primes, const Limits& limits = {});
unsigned whd(const ClauseSet& f, const Limits& limits = {});

// Exhaustive over all 3^n partial assignments; CapExceeded above
// limits.phd_vars variables.
Measured phd_measured(const ClauseSet& f, const Limits& limits = {});
unsigned phd(const ClauseSet& f, const Limits& limits = {});

// Symmetric width: least k such that resolution over clauses of length <= k
// refutes every unsatisfiable phi_C * F.
Measured wid_measured(const ClauseSet& f, const Limits& limits = {});
unsigned wid(const ClauseSet& f, const Limits& limits = {});

// hd(F) <= k, resp. whd(F) <= k, checked over the given prime implicates of
// F: every phi_C * F must be refuted at level k.
bool hd_at_most(const ClauseSet& f, const ClauseSet& primes, unsigned k, const Limits& limits = {});
bool whd_at_most(const ClauseSet& f, const ClauseSet& primes, unsigned k, const Limits& limits = {});

// e^(1/8).
inline constexpr double kResolutionSizeBase = 1.1331484530668263;
// b^(whd^2 / n) with b = e^(1/8); a lower bound on resolution proof size.
double res_lower_bound(unsigned whd_value, unsigned n);

struct HardnessReport {
  std::optional<Measured> hd;
  std::optional<Measured> whd;
  std::optional<Measured> phd;
  std::optional<Measured> wid;
  // Names of measures skipped because a cap was hit.
  std::vector<std::string> capped;
};

struct HardnessOptions {
  bool phd = true;
  bool wid = true;
};

HardnessReport hardness_report(const ClauseSet& f, const HardnessOptions& options = {}, const Limits& limits = {});

namespace packed {
bool k_refutes(const PSet& s, unsigned k, const Limits& limits = {});
}  // namespace packed

}  // namespace kcw
