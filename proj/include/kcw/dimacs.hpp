#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kcw/core.hpp"

namespace kcw {

struct DimacsDocument {
  ClauseSet clauses;
  // Text of `c` lines, without the leading "c " marker.
  std::vector<std::string> comments;
  int declared_vars = 0;
  int declared_clauses = 0;
};

// Strict DIMACS CNF reader. Throws ParseError naming the offending line for a
// malformed header, a stray 0, an unterminated clause, or a tautological
// clause. Duplicate clauses are merged.
DimacsDocument read_dimacs(std::istream& in);
ClauseSet parse_dimacs(std::string_view text);

// Header uses max(var) and c(F); literals ascend by variable within a clause.
void write_dimacs(std::ostream& out, const ClauseSet& f, const std::vector<std::string>& comments = {});
std::string to_dimacs(const ClauseSet& f, const std::vector<std::string>& comments = {});

}  // namespace kcw
