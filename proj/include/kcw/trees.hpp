#pragma once

// Labelled full binary trees and their clause-sets smu1(T), which are
// exactly the saturated minimally unsatisfiable clause-sets of deficiency 1.
// The left edge below a node labelled v carries the literal v, the right
// edge carries -v. Nodes are addressed by root-to-node bitstrings ('0' =
// left), so leaf addresses sort in left-to-right order.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kcw/core.hpp"
#include "kcw/mpsdope.hpp"

namespace kcw {

class LabeledTree {
 public:
  // A single leaf.
  LabeledTree() = default;
  // Throws DomainError for a non-positive label or labels repeated across
  // the node and its subtrees.
  LabeledTree(Var label, LabeledTree left, LabeledTree right);

  bool is_leaf() const { return children_.empty(); }
  // 0 for a leaf.
  Var label() const { return label_; }
  const LabeledTree& left() const;
  const LabeledTree& right() const;
  // Inner-node labels in preorder.
  std::vector<Var> labels() const;

  bool operator==(const LabeledTree&) const = default;

 private:
  Var label_ = 0;
  std::vector<LabeledTree> children_;
};

using NodePath = std::string;
// Leaf addresses, kept sorted and duplicate-free by the functions below.
using LeafSet = std::vector<NodePath>;

struct TreeStats {
  unsigned hts = 0;
  unsigned height = 0;
  std::size_t nlvs = 1;
  std::size_t nnds = 1;
};
TreeStats tree_stats(const LabeledTree& t);

// Subtree at a node address; DomainError for an invalid path.
const LabeledTree& subtree(const LabeledTree& t, std::string_view path);
// Leaves of T (or of the subtree at `prefix`) as full addresses, left to right.
LeafSet leaves(const LabeledTree& t, const NodePath& prefix = "");
// Addresses of all nodes at the given depth, left to right.
std::vector<NodePath> nodes_at_depth(const LabeledTree& t, unsigned depth);

// Clause C_w of a leaf: the edge literals on the root-to-leaf path.
Clause leaf_clause(const LabeledTree& t, std::string_view leaf);
ClauseSet smu1(const LabeledTree& t);
// Inverse of smu1; DomainError naming the defect when F is not in SMU_{δ=1}.
LabeledTree tsmu1(const ClauseSet& f);

// Tree of <x->1> * smu1(T): the subtree reached via x is removed and its
// sibling takes the place of the node labelled var(x).
LabeledTree apply_to_tree(const LabeledTree& t, Literal x);

// Canonical member of exhst(k, h), the largest trees with Horton-Strahler
// number k and height h; the subtree of larger Horton-Strahler number is on
// the left, inner nodes are labelled 1.. in preorder.
LabeledTree extremal_tree(unsigned k, unsigned h);
// sum_{i<=k} C(h, i), the leaf count of exhst(k, h).
std::uint64_t alpha(unsigned k, unsigned h);
bool allowed_pair(unsigned k, unsigned h);

// Literals x with leaves of V below the x-edge and none below the x̄-edge;
// equals purec of the clauses {C_w : w in V}.
Clause pure_of_leafset(const LabeledTree& t, const LeafSet& v);
// The prime implicate {u_w : w in V} ∪ pure_of_leafset(T, V) of D(smu1(T)).
Clause clause_CV(const LabeledTree& t, const LeafSet& v);
Clause clause_CV(const DopedClauseSet& doped, const LabeledTree& t, const LeafSet& v);

// One-line term: a leaf is ".", an inner node "(v L R)".
std::string to_term(const LabeledTree& t);
LabeledTree parse_term(std::string_view text);

}  // namespace kcw
