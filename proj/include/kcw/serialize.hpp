#pragma once

// JSON views of the library's result types. Clauses are integer arrays in
// DIMACS convention, assignments the list of their true literals, trees
// nested {"var", "left", "right"} objects with null leaves.

#include <json.hpp>

#include "kcw/compile.hpp"
#include "kcw/core.hpp"
#include "kcw/hardness.hpp"
#include "kcw/mpsdope.hpp"
#include "kcw/primes.hpp"
#include "kcw/trees.hpp"
#include "kcw/trigger.hpp"

namespace kcw::json {

using nlohmann::json;

json encode(const Clause& c);
json encode(const ClauseSet& f);
json encode(const PartialAssignment& phi);
json encode(const Measures& m);
json encode(const Measured& m);
json encode(const HardnessReport& r);
json encode(const LabeledTree& t);
json encode(const MpsFamily& family);
json encode(const DopedClauseSet& d);
json encode(const TriggerHypergraph& g);
json encode(const SearchResult& r);
json encode(const EquivalentSize& r);
json encode(const KBase& b);
json encode(const QueryAnswer& a);
// Prime set sidecar: count plus one entry per prime with its essential flag.
json encode_primes(const ClauseSet& primes, const ClauseSet& essential);
json encode_leafsets(const std::vector<LeafSet>& sets);

// Inverses; DomainError on malformed input.
Clause decode_clause(const json& j);
ClauseSet decode_clause_set(const json& j);
LabeledTree decode_tree(const json& j);

}  // namespace kcw::json
