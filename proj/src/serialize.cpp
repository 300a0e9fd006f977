#include "kcw/serialize.hpp"

#include "kcw/errors.hpp"

namespace kcw::json {
namespace {

json indices(const std::vector<std::size_t>& v) { return json(v); }

}  // namespace

json encode(const Clause& c) { return json(c.to_ints()); }

json encode(const ClauseSet& f) {
  json out = json::array();
  for (const Clause& c : f) out.push_back(encode(c));
  return out;
}

json encode(const PartialAssignment& phi) {
  json out = json::array();
  for (Literal x : phi.true_literals()) out.push_back(x.value());
  return out;
}

json encode(const Measures& m) { return {{"n", m.n}, {"c", m.c}, {"ell", m.ell}, {"delta", m.delta}}; }

json encode(const Measured& m) {
  json out{{"value", m.value}};
  if (m.prime) out["prime"] = encode(*m.prime);
  if (m.assignment) out["assignment"] = encode(*m.assignment);
  return out;
}

json encode(const HardnessReport& r) {
  json out = json::object();
  auto put = [&](const char* name, const std::optional<Measured>& m) {
    if (m) out[name] = encode(*m);
  };
  put("hd", r.hd);
  put("whd", r.whd);
  put("phd", r.phd);
  put("wid", r.wid);
  out["capped"] = r.capped;
  return out;
}

json encode(const LabeledTree& t) {
  if (t.is_leaf()) return nullptr;
  return {{"var", t.label()}, {"left", encode(t.left())}, {"right", encode(t.right())}};
}

json encode(const MpsFamily& family) {
  json members = json::array();
  for (const MpsMember& m : family.members) members.push_back({{"indices", indices(m.indices)}, {"pure", encode(m.pure)}});
  return {{"clauses", encode(family.base)}, {"members", members}};
}

json encode(const DopedClauseSet& d) {
  json map = json::array();
  for (std::size_t i = 0; i < d.base.size(); ++i) map.push_back({{"clause", encode(d.base[i])}, {"var", d.doping_vars[i]}});
  return {{"base", encode(d.base)}, {"doped", encode(d.doped)}, {"doping", map}};
}

json encode(const TriggerHypergraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(indices(e));
  return {{"k", g.k}, {"vertices", encode(g.vertices)}, {"edges", edges}};
}

json encode(const SearchResult& r) {
  return {{"value", r.value}, {"lower", r.lower}, {"upper", r.upper}, {"exact", r.exact}, {"witness", indices(r.witness)}};
}

json encode(const EquivalentSize& r) {
  json out{{"found", r.found}, {"exact", r.exact}, {"lower_bound", r.lower_bound}};
  if (r.found) {
    out["size"] = r.size;
    out["representative"] = encode(r.representative);
  }
  return out;
}

json encode(const KBase& b) {
  json added = json::array(), removed = json::array();
  for (const Clause& c : b.added) added.push_back(encode(c));
  for (const Clause& c : b.removed) removed.push_back(encode(c));
  return {{"level", b.level},       {"minimal", b.minimal}, {"size", b.clauses.size()},
          {"clauses", encode(b.clauses)}, {"seed", encode(b.seed)}, {"added", added},
          {"removed", removed},     {"seed_too_hard", b.seed_too_hard}};
}

json encode(const QueryAnswer& a) {
  json models = json::array();
  for (const PartialAssignment& m : a.models) models.push_back(encode(m));
  return {{"value", a.value}, {"count", a.count}, {"models", models}};
}

json encode_primes(const ClauseSet& primes, const ClauseSet& essential) {
  json list = json::array();
  for (const Clause& c : primes) list.push_back({{"clause", encode(c)}, {"essential", essential.contains(c)}});
  return {{"count", primes.size()}, {"essential", essential.size()}, {"primes", list}};
}

json encode_leafsets(const std::vector<LeafSet>& sets) { return json(sets); }

Clause decode_clause(const json& j) {
  if (!j.is_array()) throw DomainError("clause must be a JSON array of literals");
  std::vector<int> lits;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw DomainError("literal must be an integer");
    lits.push_back(x.get<int>());
  }
  return Clause::from_ints(lits);
}

ClauseSet decode_clause_set(const json& j) {
  if (!j.is_array()) throw DomainError("clause-set must be a JSON array of clauses");
  std::vector<Clause> clauses;
  for (const json& c : j) clauses.push_back(decode_clause(c));
  return ClauseSet(std::move(clauses));
}

LabeledTree decode_tree(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_object() || !j.contains("var") || !j.contains("left") || !j.contains("right")) {
    throw DomainError("tree node must be null or an object with var, left, right");
  }
  return LabeledTree(j.at("var").get<Var>(), decode_tree(j.at("left")), decode_tree(j.at("right")));
}

}  // namespace kcw::json
