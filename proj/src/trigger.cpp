#include "kcw/trigger.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kcw/errors.hpp"
#include "kcw/hardness.hpp"
#include "kcw/packed.hpp"
#include "kcw/primes.hpp"

namespace kcw {
namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= 1ull << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(1ull << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  bool intersects(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~o.words_[w];
    return r;
  }
  Bits intersect(const Bits& o) const {
    Bits r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }
  void unite(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  template <typename Fn>
  void for_each(Fn fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t m = words_[w]; m; m &= m - 1) fn(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
  }
  bool operator==(const Bits&) const = default;
  auto operator<=>(const Bits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

Bits to_bits(const std::vector<std::size_t>& idx, std::size_t n) {
  Bits b(n);
  for (std::size_t i : idx) b.set(i);
  return b;
}

// ---- transversal number ----

class TransversalSearch {
 public:
  TransversalSearch(std::vector<Bits> edges, std::size_t n, std::uint64_t cap)
      : edges_(std::move(edges)), n_(n), cap_(cap) {}

  SearchResult run() {
    SearchResult r;
    Bits none(n_);
    std::vector<std::size_t> all(edges_.size());
    std::iota(all.begin(), all.end(), 0);
    root_lower_ = packing_bound(all, none);
    greedy();
    search(Bits(n_), 0, Bits(n_));
    r.upper = best_count_;
    r.exact = !aborted_;
    r.lower = aborted_ ? root_lower_ : best_count_;
    r.value = best_count_;
    best_.for_each([&](std::size_t v) { r.witness.push_back(v); });
    return r;
  }

 private:
  std::vector<std::size_t> uncovered(const Bits& chosen) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (!edges_[e].intersects(chosen)) out.push_back(e);
    return out;
  }

  // Disjoint uncovered edges (restricted to allowed vertices) each need their
  // own vertex.
  std::size_t packing_bound(const std::vector<std::size_t>& open, const Bits& forbidden) const {
    std::vector<std::pair<std::size_t, std::size_t>> by_size;
    for (std::size_t e : open) by_size.emplace_back(edges_[e].minus(forbidden).count(), e);
    std::sort(by_size.begin(), by_size.end());
    Bits used(n_);
    std::size_t packed = 0;
    for (auto [size, e] : by_size) {
      Bits avail = edges_[e].minus(forbidden);
      if (!avail.intersects(used)) {
        used.unite(avail);
        ++packed;
      }
    }
    return packed;
  }

  void greedy() {
    Bits chosen(n_);
    std::size_t count = 0;
    for (;;) {
      auto open = uncovered(chosen);
      if (open.empty()) break;
      std::vector<std::size_t> freq(n_, 0);
      for (std::size_t e : open) edges_[e].for_each([&](std::size_t v) { ++freq[v]; });
      const auto v = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
      chosen.set(v);
      ++count;
    }
    best_ = chosen;
    best_count_ = count;
  }

  void search(const Bits& chosen, std::size_t count, Bits forbidden) {
    auto open = uncovered(chosen);
    if (open.empty()) {
      if (count < best_count_) {
        best_count_ = count;
        best_ = chosen;
      }
      return;
    }
    if (++nodes_ > cap_) {
      aborted_ = true;
      return;
    }
    if (count + packing_bound(open, forbidden) >= best_count_) return;

    // Branch on the open edge with fewest allowed vertices.
    std::size_t pick = open.front();
    std::size_t pick_size = SIZE_MAX;
    for (std::size_t e : open) {
      const std::size_t s = edges_[e].minus(forbidden).count();
      if (s < pick_size) {
        pick_size = s;
        pick = e;
      }
    }
    if (pick_size == 0) return;
    std::vector<std::size_t> freq(n_, 0);
    for (std::size_t e : open) edges_[e].for_each([&](std::size_t v) { ++freq[v]; });
    std::vector<std::size_t> order;
    edges_[pick].minus(forbidden).for_each([&](std::size_t v) { order.push_back(v); });
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return freq[a] > freq[b]; });
    for (std::size_t v : order) {
      Bits next = chosen;
      next.set(v);
      search(next, count + 1, forbidden);
      if (aborted_) return;
      // Later branches exclude v: those containing v were covered here.
      forbidden.set(v);
    }
  }

  std::vector<Bits> edges_;
  std::size_t n_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t root_lower_ = 0;
  Bits best_;
  std::size_t best_count_ = 0;
};

// ---- matching number: maximum clique in the "disjoint" graph ----

class MatchingSearch {
 public:
  MatchingSearch(std::vector<Bits> compat, std::uint64_t cap) : compat_(std::move(compat)), cap_(cap) {}

  SearchResult run() {
    const std::size_t n = compat_.size();
    SearchResult r;
    // Greedy start: take vertices in order while compatible.
    {
      Bits cand(n);
      for (std::size_t i = 0; i < n; ++i) cand.set(i);
      std::vector<std::size_t> pick;
      while (!cand.none()) {
        std::size_t v = SIZE_MAX;
        cand.for_each([&](std::size_t i) {
          if (v == SIZE_MAX) v = i;
        });
        pick.push_back(v);
        cand = cand.intersect(compat_[v]);
      }
      best_ = pick;
    }
    Bits all(n);
    for (std::size_t i = 0; i < n; ++i) all.set(i);
    std::vector<std::size_t> current;
    root_upper_ = n;
    expand(current, all);
    r.value = best_.size();
    r.lower = best_.size();
    r.exact = !aborted_;
    r.upper = aborted_ ? root_upper_ : best_.size();
    r.witness = best_;
    return r;
  }

 private:
  // Greedy colouring of the candidates: a colour class is a set of pairwise
  // conflicting (intersecting) edges, so a clique takes at most one of each.
  void colour(const Bits& p, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    Bits left = p;
    std::size_t c = 0;
    while (!left.none()) {
      ++c;
      Bits q = left;
      while (!q.none()) {
        std::size_t v = SIZE_MAX;
        q.for_each([&](std::size_t i) {
          if (v == SIZE_MAX) v = i;
        });
        left.reset(v);
        q.reset(v);
        q = q.minus(compat_[v]);
        order.push_back(v);
        bound.push_back(c);
      }
    }
  }

  void expand(std::vector<std::size_t>& current, Bits p) {
    if (++nodes_ > cap_) {
      aborted_ = true;
      return;
    }
    std::vector<std::size_t> order, bound;
    colour(p, order, bound);
    if (current.empty() && !bound.empty()) root_upper_ = bound.back();
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      Bits next = p.intersect(compat_[v]);
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      if (aborted_) return;
      p.reset(v);
    }
  }

  std::vector<Bits> compat_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t root_upper_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

TriggerHypergraph trigger_hypergraph_of_primes(const ClauseSet& primes, unsigned k) {
  TriggerHypergraph g;
  g.k = k;
  g.vertices = primes;
  auto index = packed::VarIndex::of(primes);
  const packed::PSet p = [&] {
    packed::PSet out;
    for (const Clause& c : primes) out.push_back(index.pack(c));
    return out;
  }();
  g.edges.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const packed::PClause& c = p[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const packed::PClause& d = p[j];
      if ((d.pos & c.neg) || (d.neg & c.pos)) continue;
      const int extra = std::popcount(d.pos & ~c.pos) + std::popcount(d.neg & ~c.neg);
      if (static_cast<unsigned>(extra) <= k) g.edges[i].push_back(j);
    }
  }
  return g;
}

TriggerHypergraph trigger_hypergraph(const ClauseSet& f, unsigned k, const Limits& limits) {
  return trigger_hypergraph_of_primes(prime_implicates(f, limits).primes, k);
}

SearchResult transversal_number(const TriggerHypergraph& g, const Limits& limits) {
  const std::size_t n = g.vertices.size();
  // Duplicates and supersets of other edges are implied.
  std::set<Bits> distinct;
  for (const auto& e : g.edges) distinct.insert(to_bits(e, n));
  std::vector<Bits> all(distinct.begin(), distinct.end());
  std::vector<Bits> minimal;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j)
      dominated = j != i && all[j].subset_of(all[i]) && !(all[j] == all[i]);
    if (!dominated) minimal.push_back(all[i]);
  }
  return TransversalSearch(std::move(minimal), n, limits.search_nodes).run();
}

SearchResult matching_number(const TriggerHypergraph& g, const Limits& limits) {
  const std::size_t n = g.vertices.size();
  // A matching can swap any edge for a subset of it, so only the distinct
  // inclusion-minimal edges matter; each keeps its first prime as owner.
  std::vector<Bits> distinct;
  std::vector<std::size_t> first_owner;
  std::set<Bits> seen;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    Bits b = to_bits(g.edges[i], n);
    if (seen.insert(b).second) {
      distinct.push_back(std::move(b));
      first_owner.push_back(i);
    }
  }
  std::vector<Bits> edges;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < distinct.size() && !dominated; ++j)
      dominated = j != i && distinct[j].subset_of(distinct[i]);
    if (!dominated) {
      edges.push_back(distinct[i]);
      owner.push_back(first_owner[i]);
    }
  }
  // Vertices of the disjointness graph by decreasing degree, which keeps
  // the colouring bound tight.
  const std::size_t m = edges.size();
  std::vector<std::size_t> degree(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && !edges[i].intersects(edges[j])) ++degree[i];
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::vector<Bits> compat(m, Bits(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && !edges[order[i]].intersects(edges[order[j]])) compat[i].set(j);
  SearchResult r = MatchingSearch(std::move(compat), limits.search_nodes).run();
  for (std::size_t& w : r.witness) w = owner[order[w]];
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

namespace {

void check_depth(const LabeledTree& t, unsigned k) {
  for (const NodePath& w : leaves(t)) {
    if (w.size() < k + 1) {
      throw DomainError("leaf '" + w + "' has depth " + std::to_string(w.size()) + ", below the required " +
                        std::to_string(k + 1));
    }
  }
}

// The first `count` r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t r, std::size_t count) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(r);
  std::iota(c.begin(), c.end(), 0);
  while (out.size() < count) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<LeafSet> sperner_witness(const LabeledTree& t, unsigned k) {
  check_depth(t, k);
  std::vector<LeafSet> groups;
  for (const NodePath& w : nodes_at_depth(t, k)) groups.push_back(leaves(t, w));
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < groups.size(); ++i)
    if (groups[i].size() < groups[smallest].size()) smallest = i;
  const std::size_t m = groups[smallest].size();
  const std::size_t half = m / 2;
  const std::size_t count = lex_subsets(m, half, SIZE_MAX).size();

  std::vector<LeafSet> out(count);
  for (const LeafSet& group : groups) {
    auto subsets = lex_subsets(group.size(), half, count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j : subsets[i]) out[i].push_back(group[j]);
  }
  for (LeafSet& v : out) std::sort(v.begin(), v.end());
  return out;
}

bool depth_k_incomparable(const LabeledTree& t, unsigned k, const LeafSet& v, const LeafSet& w) {
  check_depth(t, k);
  const std::set<NodePath> sv(v.begin(), v.end()), sw(w.begin(), w.end());
  for (const NodePath& node : nodes_at_depth(t, k)) {
    bool v_only = false, w_only = false;
    for (const NodePath& leaf : leaves(t, node)) {
      const bool in_v = sv.contains(leaf), in_w = sw.contains(leaf);
      v_only |= in_v && !in_w;
      w_only |= in_w && !in_v;
    }
    if (!v_only || !w_only) return false;
  }
  return true;
}

namespace {

class EquivalenceSearch {
 public:
  EquivalenceSearch(const ClauseSet& f, unsigned k, const Limits& limits)
      : f_(f), k_(k), limits_(limits), primes_(prime_implicates(f, limits).primes) {
    graph_ = trigger_hypergraph_of_primes(primes_, k);
    essential_ = essential_among(primes_, limits);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (essential_.contains(primes_[i])) {
        essential_idx_.push_back(i);
      } else {
        optional_idx_.push_back(i);
      }
    }
    tau_ = transversal_number(graph_, limits);
  }

  std::size_t base_lower() const { return std::max(tau_.lower, essential_idx_.size()); }

  bool transversal(const std::vector<bool>& in) const {
    return std::all_of(graph_.edges.begin(), graph_.edges.end(), [&](const std::vector<std::size_t>& e) {
      return std::any_of(e.begin(), e.end(), [&](std::size_t v) { return in[v]; });
    });
  }

  bool valid(const std::vector<std::size_t>& chosen) const {
    std::vector<bool> in(primes_.size(), false);
    for (std::size_t i : chosen) in[i] = true;
    if (!transversal(in)) return false;
    const ClauseSet s = subset(chosen);
    return equivalent(s, f_, limits_) && whd_at_most(s, primes_, k_, limits_);
  }

  ClauseSet subset(std::vector<std::size_t> chosen) const {
    std::sort(chosen.begin(), chosen.end());
    return primes_.subset(chosen);
  }

  EquivalentSize exhaustive() const {
    EquivalentSize out;
    out.lower_bound = base_lower();
    std::uint64_t examined = 0;
    const std::size_t free = optional_idx_.size();
    for (std::size_t size = base_lower(); size <= primes_.size(); ++size) {
      if (size < essential_idx_.size()) continue;
      const std::size_t r = size - essential_idx_.size();
      if (r > free) break;
      std::vector<std::size_t> c(r);
      std::iota(c.begin(), c.end(), 0);
      for (;;) {
        if (++examined > limits_.equiv_subsets) {
          out.lower_bound = size;
          return out;
        }
        std::vector<std::size_t> chosen = essential_idx_;
        for (std::size_t j : c) chosen.push_back(optional_idx_[j]);
        if (valid(chosen)) {
          out.representative = subset(chosen);
          out.size = size;
          out.lower_bound = size;
          out.exact = out.found = true;
          return out;
        }
        std::size_t i = r;
        while (i > 0 && c[i - 1] == free - r + (i - 1)) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
      }
      out.lower_bound = size + 1;
    }
    // Unreachable: the full prime set always qualifies.
    throw IntegrityError("no equivalent subset of the prime implicates has bounded w-hardness");
  }

  EquivalentSize heuristic() const {
    std::vector<std::size_t> chosen = essential_idx_;
    std::vector<bool> in(primes_.size(), false);
    for (std::size_t i : chosen) in[i] = true;
    auto by_size = [&](std::size_t a, std::size_t b) {
      return primes_[a].size() != primes_[b].size() ? primes_[a].size() < primes_[b].size() : a < b;
    };
    std::vector<std::size_t> ascending(primes_.size());
    std::iota(ascending.begin(), ascending.end(), 0);
    std::sort(ascending.begin(), ascending.end(), by_size);

    while (!valid(chosen)) {
      std::size_t add = SIZE_MAX;
      if (!transversal(in)) {
        // The prime hitting most uncovered edges.
        std::vector<std::size_t> hits(primes_.size(), 0);
        for (const auto& e : graph_.edges) {
          if (std::any_of(e.begin(), e.end(), [&](std::size_t v) { return in[v]; })) continue;
          for (std::size_t v : e) ++hits[v];
        }
        for (std::size_t v : ascending)
          if (!in[v] && (add == SIZE_MAX || hits[v] > hits[add])) add = v;
      } else {
        for (std::size_t v : ascending)
          if (!in[v]) {
            add = v;
            break;
          }
      }
      in[add] = true;
      chosen.push_back(add);
    }
    std::vector<std::size_t> descending = chosen;
    std::sort(descending.begin(), descending.end(), by_size);
    std::reverse(descending.begin(), descending.end());
    for (std::size_t v : descending) {
      if (essential_.contains(primes_[v])) continue;
      std::vector<std::size_t> trial;
      for (std::size_t u : chosen)
        if (u != v) trial.push_back(u);
      if (valid(trial)) chosen = std::move(trial);
    }
    EquivalentSize out;
    out.representative = subset(chosen);
    out.size = chosen.size();
    out.lower_bound = base_lower();
    out.found = true;
    out.exact = out.size == out.lower_bound;
    return out;
  }

 private:
  const ClauseSet& f_;
  unsigned k_;
  const Limits& limits_;
  ClauseSet primes_;
  TriggerHypergraph graph_;
  ClauseSet essential_;
  std::vector<std::size_t> essential_idx_;
  std::vector<std::size_t> optional_idx_;
  SearchResult tau_;
};

}  // namespace

EquivalentSize min_equivalent_size(const ClauseSet& f, unsigned k, SearchMode mode, const Limits& limits) {
  EquivalenceSearch search(f, k, limits);
  return mode == SearchMode::exhaustive ? search.exhaustive() : search.heuristic();
}

}  // namespace kcw
