#pragma once

// The clause-set families used by the separation experiments.

#include "kcw/core.hpp"
#include "kcw/mpsdope.hpp"
#include "kcw/trees.hpp"

namespace kcw {

// {{1},...,{n},{-1,...,-n}}; minimally unsatisfiable, deficiency 1, not
// saturated. Requires n >= 1.
ClauseSet g_n(unsigned n);

struct TreeInstance {
  LabeledTree tree;
  DopedClauseSet doped;
};

// D(smu1(exhst(k+1, h))). DomainError unless (k+1, h) is an allowed pair.
TreeInstance extremal_doped(unsigned k, unsigned h);
// D(smu1(exhst(1, h))): the doped renamable Horn chain with h+1 clauses.
TreeInstance horn_chain(unsigned h);

}  // namespace kcw
