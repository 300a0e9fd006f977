#pragma once

// Clause-sets over integer variables: literals, clauses, partial
// assignments, instantiation, resolution and structural measures.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kcw {

using Var = int;

// A nonzero DIMACS-style literal: positive for v, negative for its complement.
class Literal {
 public:
  explicit Literal(int value);

  int value() const { return value_; }
  Var var() const { return value_ < 0 ? -value_ : value_; }
  bool positive() const { return value_ > 0; }
  Literal operator~() const { return Literal(-value_); }

  bool operator==(const Literal&) const = default;
  // Canonical order: ascending variable, positive before negative.
  std::strong_ordering operator<=>(const Literal& other) const {
    if (auto c = var() <=> other.var(); c != 0) return c;
    return other.value_ <=> value_;
  }

 private:
  int value_;
};

// A complement-free set of literals, stored sorted in canonical order.
class Clause {
 public:
  Clause() = default;
  // Sorts and deduplicates; throws DomainError when v and -v both occur.
  explicit Clause(std::vector<Literal> literals);
  Clause(std::initializer_list<int> literals);
  static Clause from_ints(std::span<const int> literals);

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const std::vector<Literal>& literals() const { return lits_; }

  bool contains(Literal x) const;
  bool contains_var(Var v) const;
  std::vector<Var> vars() const;
  // Literal-set inclusion.
  bool subset_of(const Clause& other) const;
  // Number of literals x in this clause whose complement is in `other`.
  std::size_t clashes_with(const Clause& other) const;
  std::vector<int> to_ints() const;
  std::string to_string() const;

  bool operator==(const Clause&) const = default;
  std::strong_ordering operator<=>(const Clause& other) const;

 private:
  std::vector<Literal> lits_;
};

// A finite set of clauses kept in canonical (sorted, duplicate-free) order.
class ClauseSet {
 public:
  ClauseSet() = default;
  explicit ClauseSet(std::vector<Clause> clauses);
  ClauseSet(std::initializer_list<std::initializer_list<int>> clauses);

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool contains(const Clause& c) const;
  bool has_empty_clause() const;
  std::vector<Var> vars() const;
  Var max_var() const;
  // Index of `c` in canonical order, if present.
  std::optional<std::size_t> index_of(const Clause& c) const;

  ClauseSet with(const Clause& c) const;
  ClauseSet without(const Clause& c) const;
  ClauseSet subset(std::span<const std::size_t> indices) const;

  std::string to_string() const;

  bool operator==(const ClauseSet&) const = default;
  auto operator<=>(const ClauseSet&) const = default;

 private:
  std::vector<Clause> clauses_;
};

// A finite map variable -> {0,1}.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  // Each literal is set to true; throws DomainError on conflicting literals.
  explicit PartialAssignment(std::span<const Literal> true_literals);
  PartialAssignment(std::initializer_list<int> true_literals);
  // phi_C: sets exactly the literals of C to false.
  static PartialAssignment falsifying(const Clause& c);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::optional<bool> value(Var v) const;
  std::optional<bool> value(Literal x) const;
  // Binds var(x) so that x becomes true; throws DomainError if var(x) is
  // already bound the other way.
  void set_true(Literal x);
  bool compatible(const PartialAssignment& other) const;
  // Union of compatible assignments.
  PartialAssignment combined(const PartialAssignment& other) const;
  const std::map<Var, bool>& bindings() const { return values_; }
  // The literals made true, in canonical order.
  std::vector<Literal> true_literals() const;
  std::string to_string() const;

  bool operator==(const PartialAssignment&) const = default;

 private:
  std::map<Var, bool> values_;
};

struct Measures {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t ell = 0;
  std::int64_t delta = 0;
};

struct StructureFlags {
  bool hitting = true;
  bool one_regular_hitting = true;
  bool horn = true;
  bool contains_full_clause = false;
};

// phi * F: drop satisfied clauses, delete falsified literals.
ClauseSet apply(const PartialAssignment& phi, const ClauseSet& f);
// Resolvent when C and D clash in exactly one literal.
std::optional<Clause> resolve(const Clause& c, const Clause& d);
Measures measures(const ClauseSet& f);
ClauseSet subsumption_eliminate(const ClauseSet& f);
StructureFlags classify(const ClauseSet& f);

}  // namespace kcw
