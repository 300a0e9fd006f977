#pragma once

#include <cstddef>
#include <cstdint>

namespace kcw {

// Resource caps shared by the exhaustive procedures. Every search that can
// blow up checks one of these and throws CapExceeded instead of running away.
struct Limits {
  // Variables allowed in a satisfiability-oracle call.
  std::size_t sat_vars = 24;
  // Clauses kept by resolution closures (prime computation, k-resolution).
  std::size_t closure_clauses = 1u << 20;
  // Prime implicates / implicants returned.
  std::size_t primes = 1u << 17;
  // Variables for the exhaustive p-hardness computation (3^n assignments).
  std::size_t phd_vars = 12;
  // Clauses for subset enumeration of minimal premise sets.
  std::size_t mps_clauses = 16;
  // Branch-and-bound nodes for transversal / matching numbers.
  std::uint64_t search_nodes = 1u << 20;
  // Candidate subsets examined by exhaustive minimum-equivalent search.
  std::uint64_t equiv_subsets = 1u << 18;
  // Models produced by model enumeration.
  std::uint64_t models = 1u << 20;
};

}  // namespace kcw
