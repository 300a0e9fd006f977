#include "kcw/trees.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "kcw/errors.hpp"

namespace kcw {

LabeledTree::LabeledTree(Var label, LabeledTree left, LabeledTree right) : label_(label) {
  if (label <= 0) throw DomainError("tree labels must be positive variables, got " + std::to_string(label));
  auto ls = left.labels();
  auto rs = right.labels();
  ls.insert(ls.end(), rs.begin(), rs.end());
  ls.push_back(label);
  std::sort(ls.begin(), ls.end());
  if (auto dup = std::adjacent_find(ls.begin(), ls.end()); dup != ls.end()) {
    throw DomainError("variable " + std::to_string(*dup) + " labels more than one inner node");
  }
  children_.reserve(2);
  children_.push_back(std::move(left));
  children_.push_back(std::move(right));
}

const LabeledTree& LabeledTree::left() const {
  if (is_leaf()) throw DomainError("a leaf has no children");
  return children_[0];
}

const LabeledTree& LabeledTree::right() const {
  if (is_leaf()) throw DomainError("a leaf has no children");
  return children_[1];
}

std::vector<Var> LabeledTree::labels() const {
  std::vector<Var> out;
  auto walk = [&](auto&& self, const LabeledTree& t) -> void {
    if (t.is_leaf()) return;
    out.push_back(t.label_);
    self(self, t.children_[0]);
    self(self, t.children_[1]);
  };
  walk(walk, *this);
  return out;
}

TreeStats tree_stats(const LabeledTree& t) {
  if (t.is_leaf()) return {};
  const TreeStats l = tree_stats(t.left());
  const TreeStats r = tree_stats(t.right());
  TreeStats s;
  s.height = 1 + std::max(l.height, r.height);
  s.hts = l.hts == r.hts ? l.hts + 1 : std::max(l.hts, r.hts);
  s.nlvs = l.nlvs + r.nlvs;
  s.nnds = 1 + l.nnds + r.nnds;
  return s;
}

const LabeledTree& subtree(const LabeledTree& t, std::string_view path) {
  const LabeledTree* node = &t;
  for (char c : path) {
    if (c != '0' && c != '1') throw DomainError("node address must consist of 0/1, got '" + std::string(path) + "'");
    if (node->is_leaf()) throw DomainError("node address '" + std::string(path) + "' leaves the tree");
    node = c == '0' ? &node->left() : &node->right();
  }
  return *node;
}

LeafSet leaves(const LabeledTree& t, const NodePath& prefix) {
  LeafSet out;
  NodePath path = prefix;
  auto walk = [&](auto&& self, const LabeledTree& node) -> void {
    if (node.is_leaf()) {
      out.push_back(path);
      return;
    }
    path.push_back('0');
    self(self, node.left());
    path.back() = '1';
    self(self, node.right());
    path.pop_back();
  };
  walk(walk, subtree(t, prefix));
  return out;
}

std::vector<NodePath> nodes_at_depth(const LabeledTree& t, unsigned depth) {
  std::vector<NodePath> out;
  NodePath path;
  auto walk = [&](auto&& self, const LabeledTree& node) -> void {
    if (path.size() == depth) {
      out.push_back(path);
      return;
    }
    if (node.is_leaf()) return;
    path.push_back('0');
    self(self, node.left());
    path.back() = '1';
    self(self, node.right());
    path.pop_back();
  };
  walk(walk, t);
  return out;
}

Clause leaf_clause(const LabeledTree& t, std::string_view leaf) {
  std::vector<Literal> lits;
  const LabeledTree* node = &t;
  for (char c : leaf) {
    if (node->is_leaf() || (c != '0' && c != '1')) {
      throw DomainError("invalid leaf address '" + std::string(leaf) + "'");
    }
    lits.emplace_back(c == '0' ? node->label() : -node->label());
    node = c == '0' ? &node->left() : &node->right();
  }
  if (!node->is_leaf()) throw DomainError("address '" + std::string(leaf) + "' names an inner node");
  return Clause(std::move(lits));
}

ClauseSet smu1(const LabeledTree& t) {
  std::vector<Clause> clauses;
  for (const NodePath& w : leaves(t)) clauses.push_back(leaf_clause(t, w));
  return ClauseSet(std::move(clauses));
}

namespace {

LabeledTree tsmu1_rec(const ClauseSet& f) {
  if (f.empty()) throw DomainError("not in SMU_{δ=1}: a branch has no clauses");
  if (f.has_empty_clause()) {
    if (f.size() == 1) return LabeledTree();
    throw DomainError("not in SMU_{δ=1}: empty clause next to other clauses");
  }
  std::vector<Var> common = f[0].vars();
  for (const Clause& c : f) {
    std::vector<Var> keep;
    for (Var v : common)
      if (c.contains_var(v)) keep.push_back(v);
    common = std::move(keep);
  }
  if (common.empty()) throw DomainError("not in SMU_{δ=1}: no variable occurs in every clause of " + f.to_string());
  if (common.size() > 1) {
    throw DomainError("not in SMU_{δ=1}: variables " + std::to_string(common[0]) + " and " +
                      std::to_string(common[1]) + " both occur in every clause");
  }
  const Var v = common[0];
  LabeledTree left = tsmu1_rec(apply(PartialAssignment{-v}, f));
  LabeledTree right = tsmu1_rec(apply(PartialAssignment{v}, f));
  try {
    return LabeledTree(v, std::move(left), std::move(right));
  } catch (const DomainError& e) {
    throw DomainError(std::string("not in SMU_{δ=1}: ") + e.what());
  }
}

}  // namespace

LabeledTree tsmu1(const ClauseSet& f) {
  const Measures m = measures(f);
  if (m.delta != 1) throw DomainError("not in SMU_{δ=1}: deficiency is " + std::to_string(m.delta) + ", not 1");
  return tsmu1_rec(f);
}

LabeledTree apply_to_tree(const LabeledTree& t, Literal x) {
  auto labels = t.labels();
  if (std::find(labels.begin(), labels.end(), x.var()) == labels.end()) {
    throw DomainError("variable " + std::to_string(x.var()) + " labels no node of the tree");
  }
  auto rec = [&](auto&& self, const LabeledTree& node) -> LabeledTree {
    if (node.is_leaf()) return node;
    if (node.label() == x.var()) return x.positive() ? node.right() : node.left();
    return LabeledTree(node.label(), self(self, node.left()), self(self, node.right()));
  };
  return rec(rec, t);
}

bool allowed_pair(unsigned k, unsigned h) { return h >= k && (k != 0 || h == 0); }

LabeledTree extremal_tree(unsigned k, unsigned h) {
  if (!allowed_pair(k, h)) {
    throw DomainError("(" + std::to_string(k) + "," + std::to_string(h) + ") is not an allowed parameter pair");
  }
  Var next = 1;
  auto build = [&](auto&& self, unsigned kk, unsigned hh) -> LabeledTree {
    if (kk == 0) return LabeledTree();
    const Var v = next++;
    if (kk == 1) {
      LabeledTree left = hh == 1 ? LabeledTree() : self(self, 1u, hh - 1);
      return LabeledTree(v, std::move(left), LabeledTree());
    }
    LabeledTree left = self(self, std::min(kk, hh - 1), hh - 1);
    LabeledTree right = self(self, kk - 1, hh - 1);
    return LabeledTree(v, std::move(left), std::move(right));
  };
  return build(build, k, h);
}

std::uint64_t alpha(unsigned k, unsigned h) {
  if (!allowed_pair(k, h)) {
    throw DomainError("(" + std::to_string(k) + "," + std::to_string(h) + ") is not an allowed parameter pair");
  }
  unsigned __int128 binom = 1;
  unsigned __int128 sum = 1;
  for (unsigned i = 1; i <= k; ++i) {
    binom = binom * (h - i + 1) / i;
    sum += binom;
    if (sum > UINT64_MAX) throw CapExceeded("alpha(" + std::to_string(k) + "," + std::to_string(h) + ") overflows");
  }
  return static_cast<std::uint64_t>(sum);
}

namespace {

std::set<NodePath> checked_leaves(const LabeledTree& t, const LeafSet& v) {
  std::set<NodePath> out;
  for (const NodePath& w : v) {
    if (!subtree(t, w).is_leaf()) throw DomainError("address '" + w + "' names an inner node");
    out.insert(w);
  }
  return out;
}

}  // namespace

Clause pure_of_leafset(const LabeledTree& t, const LeafSet& v) {
  const std::set<NodePath> chosen = checked_leaves(t, v);
  std::vector<Literal> lits;
  NodePath path;
  auto has = [&](auto&& self, const LabeledTree& node) -> bool {
    if (node.is_leaf()) return chosen.contains(path);
    path.push_back('0');
    const bool l = self(self, node.left());
    path.back() = '1';
    const bool r = self(self, node.right());
    path.pop_back();
    if (l && !r) lits.emplace_back(node.label());
    if (r && !l) lits.emplace_back(-node.label());
    return l || r;
  };
  has(has, t);
  return Clause(std::move(lits));
}

Clause clause_CV(const DopedClauseSet& doped, const LabeledTree& t, const LeafSet& v) {
  if (v.empty()) throw DomainError("C_V needs a non-empty leaf set");
  if (doped.base != smu1(t)) throw DomainError("doped clause-set does not belong to the given tree");
  std::vector<Literal> lits = pure_of_leafset(t, v).literals();
  for (const NodePath& w : v) lits.emplace_back(doped.doping_var(leaf_clause(t, w)));
  return Clause(std::move(lits));
}

Clause clause_CV(const LabeledTree& t, const LeafSet& v) { return clause_CV(dope(smu1(t)), t, v); }

std::string to_term(const LabeledTree& t) {
  if (t.is_leaf()) return ".";
  return "(" + std::to_string(t.label()) + " " + to_term(t.left()) + " " + to_term(t.right()) + ")";
}

LabeledTree parse_term(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> LabeledTree {
    throw DomainError("tree term, offset " + std::to_string(pos) + ": " + what);
  };
  auto node = [&](auto&& self) -> LabeledTree {
    skip();
    if (pos >= text.size()) return fail("unexpected end");
    if (text[pos] == '.') {
      ++pos;
      return LabeledTree();
    }
    if (text[pos] != '(') return fail("expected '(' or '.'");
    ++pos;
    skip();
    Var label = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), label);
    if (ec != std::errc()) return fail("expected a variable");
    pos = static_cast<std::size_t>(ptr - text.data());
    LabeledTree left = self(self);
    LabeledTree right = self(self);
    skip();
    if (pos >= text.size() || text[pos] != ')') return fail("expected ')'");
    ++pos;
    return LabeledTree(label, std::move(left), std::move(right));
  };
  LabeledTree t = node(node);
  skip();
  if (pos != text.size()) fail("trailing characters");
  return t;
}

}  // namespace kcw
