#include "experiment.hpp"

#include <charconv>

#include "kcw/errors.hpp"
#include "kcw/families.hpp"
#include "kcw/hardness.hpp"
#include "kcw/primes.hpp"
#include "kcw/trees.hpp"
#include "kcw/trigger.hpp"

namespace kcw::cli {
namespace {

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Bounded from_search(const SearchResult& r) {
  if (r.exact) return Bounded::exact_value(r.value);
  return {r.lower, r.upper, false};
}

std::optional<unsigned> parse_unsigned(std::string_view s) {
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string Bounded::to_string() const {
  if (capped && lower == 0 && !upper) return "capped";
  if (upper && *upper == lower) return std::to_string(lower);
  if (upper) return std::to_string(lower) + ".." + std::to_string(*upper);
  return ">=" + std::to_string(lower);
}

SeparationRow separation_row(unsigned k, unsigned h, const Limits& limits) {
  SeparationRow row;
  row.k = k;
  row.h = h;
  const TreeInstance inst = extremal_doped(k, h);
  const ClauseSet& f = inst.doped.doped;
  row.size = measures(f);
  const unsigned m = 1 + h - k;
  row.sperner_bound = binomial(m, m / 2);
  if (sperner_witness(inst.tree, k).size() != row.sperner_bound) {
    throw IntegrityError("sperner witness size differs from C(m, m/2)");
  }

  row.primes = row.hd = row.whd = row.tau = row.nu = row.min_equiv = Bounded::unknown();
  const std::size_t c = row.size.c;
  if (c >= 63 || (std::uint64_t{1} << c) - 1 > limits.primes) {
    row.notes.push_back("2^c - 1 primes exceed the prime cap");
    return row;
  }
  PrimeSet p;
  try {
    p = prime_implicates(f, limits);
  } catch (const CapExceeded& e) {
    row.notes.push_back(std::string("primes: ") + e.what());
    return row;
  }
  row.primes = Bounded::exact_value(p.primes.size());
  row.hd = Bounded::exact_value(hd_measured(f, p.primes, limits).value);
  try {
    row.whd = Bounded::exact_value(whd_measured(f, p.primes, limits).value);
  } catch (const CapExceeded& e) {
    row.notes.push_back(std::string("whd: ") + e.what());
  }
  const TriggerHypergraph g = trigger_hypergraph_of_primes(p.primes, k);
  const SearchResult tau = transversal_number(g, limits);
  const SearchResult nu = matching_number(g, limits);
  row.tau = from_search(tau);
  row.nu = from_search(nu);
  if (!tau.exact) row.notes.push_back("tau: search node cap");
  if (!nu.exact) row.notes.push_back("nu: search node cap");

  EquivalentSize eq = min_equivalent_size(f, k, SearchMode::exhaustive, limits);
  if (eq.found && eq.exact) {
    row.min_equiv = Bounded::exact_value(eq.size);
  } else {
    row.notes.push_back("min_equiv: subset cap, heuristic upper bound");
    EquivalentSize up = min_equivalent_size(f, k, SearchMode::heuristic, limits);
    row.min_equiv = {std::max(eq.lower_bound, tau.lower), up.size, false};
  }
  return row;
}

void check_row(const SeparationRow& row) {
  auto fail = [&](const std::string& what) {
    throw IntegrityError("row k=" + std::to_string(row.k) + " h=" + std::to_string(row.h) + ": " + what);
  };
  if (row.hd.exact() && row.hd.lower != row.k + 1) fail("hd = " + row.hd.to_string() + ", expected k+1");
  if (row.nu.upper && row.sperner_bound > *row.nu.upper) fail("sperner bound exceeds nu");
  if (row.tau.upper && row.nu.lower > *row.tau.upper) fail("nu exceeds tau");
  if (row.min_equiv.upper && row.tau.lower > *row.min_equiv.upper) fail("tau exceeds the minimum equivalent size");
}

Range parse_range(std::string_view text) {
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string_view::npos) {
    auto v = parse_unsigned(text);
    if (!v) throw DomainError("bad range '" + std::string(text) + "'");
    r.lo = r.hi = *v;
  } else {
    auto lo = parse_unsigned(text.substr(0, dots));
    auto hi = parse_unsigned(text.substr(dots + 2));
    if (!lo || !hi || *lo > *hi) throw DomainError("bad range '" + std::string(text) + "'");
    r.lo = *lo;
    r.hi = *hi;
  }
  return r;
}

std::vector<std::pair<unsigned, unsigned>> separation_pairs(Range k, Range h) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned a = k.lo; a <= k.hi; ++a)
    for (unsigned b = h.lo; b <= h.hi; ++b)
      if (allowed_pair(a + 1, b)) out.emplace_back(a, b);
  return out;
}

std::vector<int> parse_literals(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == ',' || text[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '\t') ++j;
    int v = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + j, v);
    if (ec != std::errc() || p != text.data() + j || v == 0) {
      throw DomainError("bad literal '" + std::string(text.substr(i, j - i)) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace kcw::cli
