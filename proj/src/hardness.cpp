#include "kcw/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_set>

#include "kcw/errors.hpp"
#include "kcw/packed.hpp"
#include "kcw/primes.hpp"
#include "kcw/propagation.hpp"

namespace kcw {
namespace {

using packed::PClause;
using packed::PSet;

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

struct Node {
  PClause clause;
  int left = -1;
  int right = -1;
  bool alive = true;
};

// Given-clause saturation. A resolution step is allowed when one parent has
// length <= short_parent and the resolvent has length <= max_len; input
// clauses longer than max_len are ignored. Returns the arena index of the
// empty clause, or -1.
int saturate(const PSet& s, unsigned short_parent, unsigned max_len, const Limits& limits, std::vector<Node>& arena) {
  arena.clear();
  using Entry = std::pair<int, int>;  // (size, arena index)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<int> processed;

  auto subsumed = [&](const PClause& c) {
    return std::any_of(arena.begin(), arena.end(), [&](const Node& n) { return n.alive && n.clause.subset_of(c); });
  };
  auto insert = [&](const PClause& c, int left, int right) -> bool {
    if (subsumed(c)) return false;
    for (Node& n : arena)
      if (n.alive && c.subset_of(n.clause)) n.alive = false;
    if (arena.size() >= limits.closure_clauses) {
      throw CapExceeded("resolution saturation exceeds " + std::to_string(limits.closure_clauses) + " clauses");
    }
    arena.push_back({c, left, right, true});
    queue.emplace(c.size(), static_cast<int>(arena.size() - 1));
    return c.empty();
  };

  for (const PClause& c : s) {
    if (static_cast<unsigned>(c.size()) > max_len) continue;
    if (insert(c, -1, -1)) return static_cast<int>(arena.size() - 1);
  }
  while (!queue.empty()) {
    const int g = queue.top().second;
    queue.pop();
    if (!arena[static_cast<std::size_t>(g)].alive) continue;
    const PClause given = arena[static_cast<std::size_t>(g)].clause;
    const bool given_short = static_cast<unsigned>(given.size()) <= short_parent;
    std::erase_if(processed, [&](int i) { return !arena[static_cast<std::size_t>(i)].alive; });
    processed.push_back(g);
    const std::vector<int> partners = processed;
    for (int p : partners) {
      if (!arena[static_cast<std::size_t>(g)].alive) break;
      const Node& other = arena[static_cast<std::size_t>(p)];
      if (!other.alive) continue;
      const PClause oc = other.clause;
      if (!given_short && static_cast<unsigned>(oc.size()) > short_parent) continue;
      const std::uint64_t clash = given.clash_mask(oc);
      if (std::popcount(clash) != 1) continue;
      const PClause r{(given.pos | oc.pos) & ~clash, (given.neg | oc.neg) & ~clash};
      if (static_cast<unsigned>(r.size()) > max_len) continue;
      if (insert(r, g, p)) return static_cast<int>(arena.size() - 1);
    }
  }
  return -1;
}

KResolution trace_of(const std::vector<Node>& arena, int root, const packed::VarIndex& index) {
  std::vector<int> stack{root};
  std::vector<bool> used(arena.size(), false);
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (used[static_cast<std::size_t>(i)]) continue;
    used[static_cast<std::size_t>(i)] = true;
    const Node& n = arena[static_cast<std::size_t>(i)];
    if (n.left >= 0) stack.push_back(n.left);
    if (n.right >= 0) stack.push_back(n.right);
  }
  // Parents always precede children in the arena.
  std::vector<std::size_t> position(arena.size(), 0);
  KResolution out;
  out.refuted = true;
  for (std::size_t i = 0; i < arena.size(); ++i) {
    if (!used[i]) continue;
    position[i] = out.trace.size();
    ResolutionStep step{index.unpack(arena[i].clause), std::nullopt, std::nullopt};
    if (arena[i].left >= 0) {
      step.left = position[static_cast<std::size_t>(arena[i].left)];
      step.right = position[static_cast<std::size_t>(arena[i].right)];
    }
    out.trace.push_back(std::move(step));
  }
  return out;
}

using packed::k_refutes;

bool width_refutes(const PSet& s, unsigned w, const Limits& limits) {
  std::vector<Node> arena;
  return saturate(s, kUnbounded, w, limits, arena) >= 0;
}

std::size_t var_count(const PSet& s) {
  std::uint64_t vars = 0;
  for (const PClause& c : s) vars |= c.vars();
  return static_cast<std::size_t>(std::popcount(vars));
}

// Least level at which `refutes` succeeds on an unsatisfiable s; levels up to
// n(s) always suffice for the procedures used here.
template <typename Refutes>
unsigned least_level(const PSet& s, unsigned from, Refutes refutes) {
  const unsigned top = static_cast<unsigned>(var_count(s));
  unsigned k = from;
  while (k < top && !refutes(s, k)) ++k;
  return k;
}

// Shared shape of hd / whd / wid: unsatisfiable input gives the least
// refuting level; satisfiable input the maximum over phi_C * F for prime
// implicates C. The maximum is found lazily: a prime only raises the running
// value when the current level fails on it.
template <typename Refutes>
Measured lifted_measure(const ClauseSet& f, const ClauseSet* primes, const Limits& limits, Refutes refutes) {
  Measured out;
  if (f.empty()) return out;
  if (f.has_empty_clause()) return out;
  auto index = packed::VarIndex::of(f);
  const PSet s = index.pack(f);
  if (!packed::solve(s).sat) {
    out.value = least_level(s, 0, refutes);
    return out;
  }
  PSet ps;
  if (primes) {
    ps = index.pack(*primes);
  } else {
    ps = packed::prime_implicates(s, limits);
  }
  bool first = true;
  for (const PClause& c : ps) {
    const PSet g = packed::assign_falsify(s, c);
    if (!first && refutes(g, out.value)) continue;
    const unsigned v = least_level(g, out.value, refutes);
    if (first || v > out.value) {
      out.value = v;
      out.prime = index.unpack(c);
    }
    first = false;
  }
  return out;
}

}  // namespace

bool packed::k_refutes(const PSet& s, unsigned k, const Limits& limits) {
  std::vector<Node> arena;
  return saturate(s, k, kUnbounded, limits, arena) >= 0;
}

KResolution k_res_refutes(const ClauseSet& f, unsigned k, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  std::vector<Node> arena;
  const int root = saturate(index.pack(f), k, kUnbounded, limits, arena);
  if (root < 0) return {};
  return trace_of(arena, root, index);
}

Measured hd_measured(const ClauseSet& f, const Limits& limits) {
  packed::Reducer reducer;
  return lifted_measure(f, nullptr, limits, [&](const PSet& g, unsigned k) { return reducer.refutes(g, k); });
}

Measured hd_measured(const ClauseSet& f, const ClauseSet& primes, const Limits& limits) {
  packed::Reducer reducer;
  return lifted_measure(f, &primes, limits, [&](const PSet& g, unsigned k) { return reducer.refutes(g, k); });
}

unsigned hd(const ClauseSet& f, const Limits& limits) { return hd_measured(f, limits).value; }

Measured whd_measured(const ClauseSet& f, const Limits& limits) {
  return lifted_measure(f, nullptr, limits, [&](const PSet& g, unsigned k) { return k_refutes(g, k, limits); });
}

Measured whd_measured(const ClauseSet& f, const ClauseSet& primes, const Limits& limits) {
  return lifted_measure(f, &primes, limits, [&](const PSet& g, unsigned k) { return k_refutes(g, k, limits); });
}

unsigned whd(const ClauseSet& f, const Limits& limits) { return whd_measured(f, limits).value; }

Measured wid_measured(const ClauseSet& f, const Limits& limits) {
  return lifted_measure(f, nullptr, limits, [&](const PSet& g, unsigned w) { return width_refutes(g, w, limits); });
}

unsigned wid(const ClauseSet& f, const Limits& limits) { return wid_measured(f, limits).value; }

Measured phd_measured(const ClauseSet& f, const Limits& limits) {
  auto index = packed::VarIndex::of(f);
  if (index.size() > limits.phd_vars) {
    throw CapExceeded("phd: " + std::to_string(index.size()) + " variables exceeds cap of " +
                      std::to_string(limits.phd_vars));
  }
  const PSet s = index.pack(f);
  const std::uint64_t all = index.all();
  packed::Reducer reducer;
  std::unordered_set<PSet, packed::PSetHash> seen;
  Measured out;
  // Every partial assignment: a set of bound variables and, within it, the
  // variables set to 1.
  std::uint64_t assigned = 0;
  do {
    std::uint64_t values = 0;
    do {
      PSet g = packed::assign_masks(s, assigned, values);
      if (seen.insert(g).second) {
        const packed::ForcedMasks fm = packed::forced(g);
        const PSet target = fm.unsat ? PSet{PClause{}} : packed::assign_masks(g, fm.assigned, fm.values);
        bool raised = false;
        while (reducer.run(g, out.value).reduced != target) {
          ++out.value;
          raised = true;
        }
        if (raised) out.assignment = index.unpack_assignment(assigned, values);
        if (reducer.memo_size() > limits.closure_clauses) reducer.clear();
      }
      values = (values - assigned) & assigned;
    } while (values != 0);
    assigned = (assigned - all) & all;
  } while (assigned != 0);
  return out;
}

unsigned phd(const ClauseSet& f, const Limits& limits) { return phd_measured(f, limits).value; }

namespace {

template <typename Refutes>
bool all_primes_refuted(const ClauseSet& f, const ClauseSet& primes, Refutes refutes) {
  auto index = packed::VarIndex::of(f, primes);
  const PSet s = index.pack(f);
  for (const Clause& c : primes)
    if (!refutes(packed::assign_falsify(s, index.pack(c)))) return false;
  return true;
}

}  // namespace

bool hd_at_most(const ClauseSet& f, const ClauseSet& primes, unsigned k, const Limits&) {
  packed::Reducer reducer;
  return all_primes_refuted(f, primes, [&](const PSet& g) { return reducer.refutes(g, k); });
}

bool whd_at_most(const ClauseSet& f, const ClauseSet& primes, unsigned k, const Limits& limits) {
  return all_primes_refuted(f, primes, [&](const PSet& g) { return k_refutes(g, k, limits); });
}

double res_lower_bound(unsigned whd_value, unsigned n) {
  if (n == 0) throw DomainError("res_lower_bound: n must be positive");
  const double w = whd_value;
  return std::exp(w * w / (8.0 * n));
}

HardnessReport hardness_report(const ClauseSet& f, const HardnessOptions& options, const Limits& limits) {
  HardnessReport r;
  auto attempt = [&](const char* name, auto&& compute, std::optional<Measured>& slot) {
    try {
      slot = compute();
    } catch (const CapExceeded&) {
      r.capped.emplace_back(name);
    }
  };
  attempt("hd", [&] { return hd_measured(f, limits); }, r.hd);
  attempt("whd", [&] { return whd_measured(f, limits); }, r.whd);
  if (options.phd) attempt("phd", [&] { return phd_measured(f, limits); }, r.phd);
  if (options.wid) attempt("wid", [&] { return wid_measured(f, limits); }, r.wid);
  return r;
}

}  // namespace kcw
