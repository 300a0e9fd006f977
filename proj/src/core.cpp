#include "kcw/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kcw/errors.hpp"

namespace kcw {

Literal::Literal(int value) : value_(value) {
  if (value == 0) throw DomainError("literal 0 is not a literal");
}

Clause::Clause(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var()) {
      throw DomainError("clause contains both " + std::to_string(lits_[i - 1].value()) +
                        " and " + std::to_string(lits_[i].value()));
    }
  }
}

Clause::Clause(std::initializer_list<int> literals)
    : Clause(from_ints(std::span<const int>(literals.begin(), literals.size()))) {}

Clause Clause::from_ints(std::span<const int> literals) {
  std::vector<Literal> lits;
  lits.reserve(literals.size());
  for (int x : literals) lits.emplace_back(x);
  return Clause(std::move(lits));
}

bool Clause::contains(Literal x) const { return std::binary_search(lits_.begin(), lits_.end(), x); }

bool Clause::contains_var(Var v) const {
  return contains(Literal(v)) || contains(Literal(-v));
}

std::vector<Var> Clause::vars() const {
  std::vector<Var> out;
  out.reserve(lits_.size());
  for (Literal x : lits_) out.push_back(x.var());
  return out;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

std::size_t Clause::clashes_with(const Clause& other) const {
  std::size_t n = 0;
  for (Literal x : lits_)
    if (other.contains(~x)) ++n;
  return n;
}

std::vector<int> Clause::to_ints() const {
  std::vector<int> out;
  out.reserve(lits_.size());
  for (Literal x : lits_) out.push_back(x.value());
  return out;
}

std::string Clause::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < lits_.size(); ++i) os << (i ? "," : "") << lits_[i].value();
  os << '}';
  return os.str();
}

std::strong_ordering Clause::operator<=>(const Clause& other) const {
  return std::lexicographical_compare_three_way(lits_.begin(), lits_.end(), other.lits_.begin(),
                                                other.lits_.end());
}

ClauseSet::ClauseSet(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

ClauseSet::ClauseSet(std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Clause> cs;
  for (const auto& c : clauses) cs.emplace_back(c);
  *this = ClauseSet(std::move(cs));
}

bool ClauseSet::contains(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

bool ClauseSet::has_empty_clause() const { return !clauses_.empty() && clauses_.front().empty(); }

std::vector<Var> ClauseSet::vars() const {
  std::set<Var> vs;
  for (const Clause& c : clauses_)
    for (Literal x : c) vs.insert(x.var());
  return {vs.begin(), vs.end()};
}

Var ClauseSet::max_var() const {
  Var m = 0;
  for (const Clause& c : clauses_)
    if (!c.empty()) m = std::max(m, c.literals().back().var());
  return m;
}

std::optional<std::size_t> ClauseSet::index_of(const Clause& c) const {
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c);
  if (it == clauses_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - clauses_.begin());
}

ClauseSet ClauseSet::with(const Clause& c) const {
  auto cs = clauses_;
  cs.push_back(c);
  return ClauseSet(std::move(cs));
}

ClauseSet ClauseSet::without(const Clause& c) const {
  ClauseSet out;
  out.clauses_.reserve(clauses_.size());
  for (const Clause& d : clauses_)
    if (d != c) out.clauses_.push_back(d);
  return out;
}

ClauseSet ClauseSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Clause> cs;
  cs.reserve(indices.size());
  for (std::size_t i : indices) cs.push_back(clauses_.at(i));
  return ClauseSet(std::move(cs));
}

std::string ClauseSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < clauses_.size(); ++i) os << (i ? "," : "") << clauses_[i].to_string();
  os << '}';
  return os.str();
}

PartialAssignment::PartialAssignment(std::span<const Literal> true_literals) {
  for (Literal x : true_literals) set_true(x);
}

PartialAssignment::PartialAssignment(std::initializer_list<int> true_literals) {
  for (int x : true_literals) set_true(Literal(x));
}

PartialAssignment PartialAssignment::falsifying(const Clause& c) {
  PartialAssignment phi;
  for (Literal x : c) phi.set_true(~x);
  return phi;
}

std::optional<bool> PartialAssignment::value(Var v) const {
  auto it = values_.find(v);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> PartialAssignment::value(Literal x) const {
  auto v = value(x.var());
  if (!v) return std::nullopt;
  return x.positive() ? *v : !*v;
}

void PartialAssignment::set_true(Literal x) {
  auto [it, inserted] = values_.emplace(x.var(), x.positive());
  if (!inserted && it->second != x.positive()) {
    throw DomainError("variable " + std::to_string(x.var()) + " bound twice");
  }
}

bool PartialAssignment::compatible(const PartialAssignment& other) const {
  for (const auto& [v, b] : other.values_) {
    auto it = values_.find(v);
    if (it != values_.end() && it->second != b) return false;
  }
  return true;
}

PartialAssignment PartialAssignment::combined(const PartialAssignment& other) const {
  PartialAssignment out = *this;
  for (const auto& [v, b] : other.values_) out.set_true(Literal(b ? v : -v));
  return out;
}

std::vector<Literal> PartialAssignment::true_literals() const {
  std::vector<Literal> out;
  out.reserve(values_.size());
  for (const auto& [v, b] : values_) out.emplace_back(b ? v : -v);
  return out;
}

std::string PartialAssignment::to_string() const {
  std::ostringstream os;
  os << '<';
  bool first = true;
  for (const auto& [v, b] : values_) {
    os << (first ? "" : ",") << v << "->" << (b ? 1 : 0);
    first = false;
  }
  os << '>';
  return os.str();
}

ClauseSet apply(const PartialAssignment& phi, const ClauseSet& f) {
  if (phi.empty()) return f;
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const Clause& c : f) {
    std::vector<Literal> kept;
    bool satisfied = false;
    for (Literal x : c) {
      auto v = phi.value(x);
      if (!v) {
        kept.push_back(x);
      } else if (*v) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.emplace_back(std::move(kept));
  }
  return ClauseSet(std::move(out));
}

std::optional<Clause> resolve(const Clause& c, const Clause& d) {
  std::optional<Literal> pivot;
  for (Literal x : c) {
    if (d.contains(~x)) {
      if (pivot) return std::nullopt;
      pivot = x;
    }
  }
  if (!pivot) return std::nullopt;
  std::vector<Literal> lits;
  lits.reserve(c.size() + d.size());
  for (Literal x : c)
    if (x != *pivot) lits.push_back(x);
  for (Literal x : d)
    if (x != ~*pivot) lits.push_back(x);
  return Clause(std::move(lits));
}

Measures measures(const ClauseSet& f) {
  Measures m;
  m.n = f.vars().size();
  m.c = f.size();
  for (const Clause& c : f) m.ell += c.size();
  m.delta = static_cast<std::int64_t>(m.c) - static_cast<std::int64_t>(m.n);
  return m;
}

ClauseSet subsumption_eliminate(const ClauseSet& f) {
  std::vector<const Clause*> order;
  order.reserve(f.size());
  for (const Clause& c : f) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const Clause* a, const Clause* b) { return a->size() < b->size(); });
  std::vector<Clause> kept;
  for (const Clause* c : order) {
    bool subsumed = std::any_of(kept.begin(), kept.end(),
                                [&](const Clause& k) { return k.subset_of(*c); });
    if (!subsumed) kept.push_back(*c);
  }
  return ClauseSet(std::move(kept));
}

StructureFlags classify(const ClauseSet& f) {
  StructureFlags flags;
  const std::size_t n = f.vars().size();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Clause& c = f[i];
    std::size_t positives = 0;
    for (Literal x : c) positives += x.positive();
    if (positives > 1) flags.horn = false;
    if (c.size() == n && !f.empty()) flags.contains_full_clause = true;
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      std::size_t clashes = c.clashes_with(f[j]);
      if (clashes == 0) flags.hitting = false;
      if (clashes != 1) flags.one_regular_hitting = false;
    }
  }
  return flags;
}

}  // namespace kcw
