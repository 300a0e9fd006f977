#pragma once

// Rows of the separation experiment over the doped extremal-tree family,
// plus the small parsers the command-line driver shares with its tests.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/limits.hpp"

namespace kcw::cli {

// A quantity known exactly, only within bounds, or not at all.
struct Bounded {
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  bool capped = false;

  static Bounded exact_value(std::size_t v) { return {v, v, false}; }
  static Bounded unknown() { return {0, std::nullopt, true}; }
  bool exact() const { return !capped && upper && *upper == lower; }
  // "7", "3..9", ">=3" or "capped".
  std::string to_string() const;
};

struct SeparationRow {
  unsigned k = 0;
  unsigned h = 0;
  Measures size;
  Bounded primes;
  Bounded hd;
  Bounded whd;
  Bounded tau;
  Bounded nu;
  std::uint64_t sperner_bound = 0;
  Bounded min_equiv;
  // Why cells are bound-only.
  std::vector<std::string> notes;
};

// One row for D(smu1(exhst(k+1, h))). Prime-dependent cells are flagged
// capped when 2^c - 1 exceeds limits.primes.
SeparationRow separation_row(unsigned k, unsigned h, const Limits& limits);
// hd = k+1 and sperner_bound <= nu <= tau <= min_equiv, as far as the
// cells are known; IntegrityError otherwise.
void check_row(const SeparationRow& row);

struct Range {
  unsigned lo = 0;
  unsigned hi = 0;
};
// "3" or "1..4"; DomainError otherwise.
Range parse_range(std::string_view text);
// Pairs (k, h) with exhst(k+1, h) defined, in (k, h) order.
std::vector<std::pair<unsigned, unsigned>> separation_pairs(Range k, Range h);

// Whitespace- or comma-separated nonzero integers.
std::vector<int> parse_literals(std::string_view text);

}  // namespace kcw::cli
