#include "kcw/families.hpp"

#include "kcw/errors.hpp"

namespace kcw {

ClauseSet g_n(unsigned n) {
  if (n == 0) throw DomainError("g_n: n must be positive");
  std::vector<Clause> clauses;
  std::vector<Literal> negative;
  for (unsigned v = 1; v <= n; ++v) {
    clauses.push_back(Clause{static_cast<int>(v)});
    negative.emplace_back(-static_cast<int>(v));
  }
  clauses.emplace_back(std::move(negative));
  return ClauseSet(std::move(clauses));
}

TreeInstance extremal_doped(unsigned k, unsigned h) {
  LabeledTree t = extremal_tree(k + 1, h);
  DopedClauseSet d = dope(smu1(t));
  return {std::move(t), std::move(d)};
}

TreeInstance horn_chain(unsigned h) { return extremal_doped(0, h); }

}  // namespace kcw
