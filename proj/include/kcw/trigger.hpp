#pragma once

// Trigger hypergraphs T_k(F), their transversal and matching numbers, the
// Sperner family of depth-k-incomparable leaf sets, and the search for the
// smallest equivalent clause-set of bounded w-hardness.

#include <cstddef>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"
#include "kcw/trees.hpp"

namespace kcw {

struct TriggerHypergraph {
  unsigned k = 0;
  // The prime implicates, in canonical order.
  ClauseSet vertices;
  // edges[i] = E^k of vertices[i]: sorted vertex indices of the primes C'
  // with C' ∩ C̄ = ∅ and |C' \ C| <= k.
  std::vector<std::vector<std::size_t>> edges;
};

TriggerHypergraph trigger_hypergraph(const ClauseSet& f, unsigned k, const Limits& limits = {});
// Same, from an already computed prime set.
TriggerHypergraph trigger_hypergraph_of_primes(const ClauseSet& primes, unsigned k);

struct SearchResult {
  // Best value found; equals lower == upper when exact.
  std::size_t value = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = true;
  // tau: vertex indices of a transversal; nu: indices of the primes whose
  // edges are pairwise disjoint.
  std::vector<std::size_t> witness;
};

// Branch and bound; stops after limits.search_nodes nodes and then reports
// bounds with exact = false.
SearchResult transversal_number(const TriggerHypergraph& g, const Limits& limits = {});
SearchResult matching_number(const TriggerHypergraph& g, const Limits& limits = {});

// C(m, floor(m/2)) leaf sets that are pairwise depth-k-incomparable, where m
// is the leaf count of the smallest subtree rooted at depth k. Requires every
// leaf to have depth >= k + 1.
std::vector<LeafSet> sperner_witness(const LabeledTree& t, unsigned k);
// V and W incomparable on the leaves of every subtree rooted at depth k.
bool depth_k_incomparable(const LabeledTree& t, unsigned k, const LeafSet& v, const LeafSet& w);

enum class SearchMode { exhaustive, heuristic };

struct EquivalentSize {
  // Size of `representative`.
  std::size_t size = 0;
  // Proven lower bound on the minimum (>= tau(T_k(F))).
  std::size_t lower_bound = 0;
  // Minimum certified: `size` is optimal.
  bool exact = false;
  // False when the exhaustive search hit limits.equiv_subsets before
  // finding a solution; only lower_bound is meaningful then.
  bool found = false;
  ClauseSet representative;
};

// Smallest F' ⊆ primec_0(F) equivalent to F with whd(F') <= k. Exhaustive
// mode scans subsets by increasing size starting at max(tau, #essential);
// heuristic mode grows the essential primes greedily and then prunes.
EquivalentSize min_equivalent_size(const ClauseSet& f, unsigned k, SearchMode mode, const Limits& limits = {});

}  // namespace kcw
